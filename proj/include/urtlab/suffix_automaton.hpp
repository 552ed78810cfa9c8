// suffix_automaton.hpp -- factor indexing for long words.

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace urt {

// Suffix automaton over letters 1..alphabet_size. Used to count and
// enumerate distinct factors of the long morphic prefixes without
// materializing quadratic factor sets.
class SuffixAutomaton {
public:
    SuffixAutomaton(std::string_view word, int alphabet_size);

    std::size_t state_count() const { return len_.size(); }

    /// counts[L] = number of distinct factors of length L, for L in
    /// [0, max_len] (counts[0] == 1 for the empty factor).
    std::vector<long long> factor_counts(int max_len) const;

    /// Calls emit once per distinct factor of length in [1, max_len].
    /// Factors are passed as raw letter strings.
    void enumerate_factors(int max_len, const std::function<void(const std::string&)>& emit) const;

private:
    int alphabet_;
    std::vector<int32_t> len_;
    std::vector<int32_t> link_;
    std::vector<int32_t> next_;  // state * alphabet_ + (letter-1)

    int32_t transition(int32_t state, int letter_index) const {
        return next_[static_cast<std::size_t>(state) * alphabet_ + letter_index];
    }
};

}  // namespace urt
