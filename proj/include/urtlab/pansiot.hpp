// pansiot.hpp -- the ternary ranking encoding of k-ary words and the
// permutation morphisms attached to it.
//
// Words over {1..k} whose length k-2 windows are rainbow and whose length
// k windows miss at most one letter admit a ternary re-encoding: after any
// prefix the letters of the alphabet are ranked by last appearance, the
// next letter is always one of the three oldest ranks, and recording that
// rank reproduces the word.

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "urtlab/word.hpp"

namespace urt {

enum class Parity { even, odd };

class Permutation {
public:
    Permutation() = default;
    /// image[j-1] is the image of point j.
    explicit Permutation(std::vector<uint8_t> image);

    static Permutation identity(int k);

    int degree() const { return static_cast<int>(image_.size()); }
    int apply(int point) const { return image_[point - 1]; }

    Permutation inverse() const;
    bool is_identity() const;

    /// 4 bits per point; usable as an exact hash key for degree <= 16.
    std::uint64_t packed() const;

    friend bool operator==(const Permutation&, const Permutation&) = default;

private:
    std::vector<uint8_t> image_;
};

/// a after b: the result maps x to a(b(x)). eval_word folds words left to
/// right with this orientation, which is the one making the ranking
/// recurrence below hold.
Permutation compose(const Permutation& a, const Permutation& b);

Parity parity(const Permutation& p);

std::string to_string(const Permutation& p);

/// The three rank-update permutations on {1..k}: sigma(1) cycles all of
/// 1..k, sigma(2) fixes 1 and cycles 2..k, sigma(3) fixes 1,2 and cycles
/// 3..k. Index [t-1] holds sigma(t).
std::array<Permutation, 3> sigma(int k);

/// tau(a) = sigma evaluated on g(a), i.e. tau(1) = sigma("31") and
/// tau(2) = sigma("312").
std::array<Permutation, 2> tau(int k);

/// Image of a word under a letter-indexed permutation morphism. With r_i
/// the ranking after the i-th encoded letter, r_i = compose(r_0,
/// eval_word(sigma, t_1...t_i)) holds for every valid word.
Permutation eval_word(std::span<const Permutation> mapping, const Word& t);

/// The permutation fixing 1 and reversing 2..k. It is the net effect, on
/// rankings, of replacing a rainbow window by its mirror image; it is odd
/// exactly when k is 0 or 3 mod 4.
Permutation reversal_ranking_shift(int k);

struct EncodeError : std::runtime_error {
    EncodeError(const std::string& msg, std::size_t position)
        : std::runtime_error(msg), position(position) {}
    std::size_t position;
};

/// Ranking of {1..k} by last appearance in the prefix: ranks 3..k hold the
/// last k-2 letters in order of final appearance (rank k = most recent);
/// of the two remaining letters, rank 2 is the one appearing later in the
/// prefix and rank 1 the other (which may be absent entirely). Requires at
/// least k-1 distinct letters in the prefix.
Permutation ranking_after(const Word& prefix, int k);

struct EncodingResult {
    Word prefix_u;  // shortest prefix with k-1 distinct letters
    Word code;      // ternary, one letter per position after prefix_u
    Permutation initial_ranking;
};

std::string encoding_json(const EncodingResult& r);

/// Encodes w over {1,2,3}. Throws EncodeError (with the offending
/// position) when w violates the window properties or a letter falls
/// outside the three oldest ranks.
EncodingResult encode(const Word& w, int k);

/// Rebuilds the word from its shortest rainbow prefix and code. With
/// check_window_properties set, the output is validated the way encode
/// would.
Word decode(const Word& prefix_u, const Word& code, int k,
            bool check_window_properties = false);

}  // namespace urt
