#include "urtlab/suffix_automaton.hpp"

#include <stdexcept>

namespace urt {

SuffixAutomaton::SuffixAutomaton(std::string_view word, int alphabet_size)
    : alphabet_(alphabet_size) {
    if (alphabet_size < 1) throw std::invalid_argument("alphabet size must be >= 1");
    std::size_t cap = 2 * word.size() + 2;
    len_.reserve(cap);
    link_.reserve(cap);
    next_.reserve(cap * alphabet_);

    auto new_state = [&](int32_t len, int32_t link) -> int32_t {
        len_.push_back(len);
        link_.push_back(link);
        next_.insert(next_.end(), alphabet_, -1);
        return static_cast<int32_t>(len_.size() - 1);
    };
    auto clone_state = [&](int32_t from, int32_t len) -> int32_t {
        int32_t s = new_state(len, link_[from]);
        for (int c = 0; c < alphabet_; ++c)
            next_[static_cast<std::size_t>(s) * alphabet_ + c] =
                next_[static_cast<std::size_t>(from) * alphabet_ + c];
        return s;
    };

    new_state(0, -1);
    int32_t last = 0;
    for (char ch : word) {
        int c = static_cast<unsigned char>(ch) - 1;
        if (c < 0 || c >= alphabet_) throw std::invalid_argument("letter outside alphabet");
        int32_t cur = new_state(len_[last] + 1, -1);
        int32_t p = last;
        while (p != -1 && transition(p, c) == -1) {
            next_[static_cast<std::size_t>(p) * alphabet_ + c] = cur;
            p = link_[p];
        }
        if (p == -1) {
            link_[cur] = 0;
        } else {
            int32_t q = transition(p, c);
            if (len_[p] + 1 == len_[q]) {
                link_[cur] = q;
            } else {
                int32_t cl = clone_state(q, len_[p] + 1);
                while (p != -1 && transition(p, c) == q) {
                    next_[static_cast<std::size_t>(p) * alphabet_ + c] = cl;
                    p = link_[p];
                }
                link_[q] = cl;
                link_[cur] = cl;
            }
        }
        last = cur;
    }
}

std::vector<long long> SuffixAutomaton::factor_counts(int max_len) const {
    if (max_len < 0) max_len = 0;
    // Each state contributes one factor per length in (len(link), len];
    // accumulate as a difference array clipped to max_len.
    std::vector<long long> diff(static_cast<std::size_t>(max_len) + 2, 0);
    for (std::size_t v = 1; v < len_.size(); ++v) {
        long long lo = len_[link_[v]] + 1;
        long long hi = len_[v];
        if (lo > max_len) continue;
        if (hi > max_len) hi = max_len;
        if (lo > hi) continue;
        diff[static_cast<std::size_t>(lo)] += 1;
        diff[static_cast<std::size_t>(hi) + 1] -= 1;
    }
    std::vector<long long> counts(static_cast<std::size_t>(max_len) + 1, 0);
    counts[0] = 1;
    long long run = 0;
    for (int l = 1; l <= max_len; ++l) {
        run += diff[static_cast<std::size_t>(l)];
        counts[static_cast<std::size_t>(l)] = run;
    }
    return counts;
}

void SuffixAutomaton::enumerate_factors(
    int max_len, const std::function<void(const std::string&)>& emit) const {
    if (max_len <= 0) return;
    std::string path;
    path.reserve(static_cast<std::size_t>(max_len));
    // Iterative DFS over transitions; every transition path from the root
    // spells a distinct factor exactly once.
    struct Frame {
        int32_t state;
        int next_letter;
    };
    std::vector<Frame> stack{{0, 0}};
    while (!stack.empty()) {
        Frame& top = stack.back();
        bool can_extend = static_cast<int>(path.size()) < max_len;
        if (!can_extend || top.next_letter >= alphabet_) {
            stack.pop_back();
            if (!stack.empty()) path.pop_back();  // the root frame spelled no letter
            continue;
        }
        int c = top.next_letter++;
        int32_t to = transition(top.state, c);
        if (to == -1) continue;
        path.push_back(static_cast<char>(c + 1));
        emit(path);
        stack.push_back({to, 0});
    }
}

}  // namespace urt
