#include "urtlab/word.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace urt {

namespace {

void check_letter(int c, int k) {
    if (c < 1 || c > k)
        throw std::invalid_argument("letter " + std::to_string(c) +
                                    " outside alphabet of size " + std::to_string(k));
}

}  // namespace

Word::Word(std::string letters, int alphabet_size) : data_(std::move(letters)), k_(alphabet_size) {
    for (char c : data_) check_letter(static_cast<unsigned char>(c), k_);
}

Word::Word(std::initializer_list<int> letters, int alphabet_size) : k_(alphabet_size) {
    data_.reserve(letters.size());
    for (int c : letters) {
        check_letter(c, k_);
        data_.push_back(static_cast<char>(c));
    }
}

Word Word::from_digits(std::string_view digits, int alphabet_size) {
    std::string raw;
    raw.reserve(digits.size());
    for (char c : digits) {
        if (c < '1' || c > '9')
            throw std::invalid_argument(std::string("bad digit '") + c + "' in word");
        raw.push_back(static_cast<char>(c - '0'));
    }
    return Word(std::move(raw), alphabet_size);
}

void Word::push_back(Letter c) {
    check_letter(c, k_);
    data_.push_back(static_cast<char>(c));
}

Word Word::subword(std::size_t pos, std::size_t len) const {
    if (pos > data_.size() || pos + len > data_.size())
        throw std::out_of_range("subword out of range");
    return Word(data_.substr(pos, len), k_);
}

Word operator+(const Word& a, const Word& b) {
    Word out = a;
    out.append(b);
    return out;
}

Word parse_word(std::string_view text, int alphabet_size) {
    bool spaced = text.find_first_of(" \t\r\n") != std::string_view::npos;
    if (!spaced) return Word::from_digits(text, alphabet_size);
    std::istringstream in{std::string(text)};
    std::string raw;
    long long v;
    while (in >> v) {
        if (v < 1 || v > alphabet_size)
            throw std::invalid_argument("letter " + std::to_string(v) + " outside alphabet");
        raw.push_back(static_cast<char>(v));
    }
    if (!in.eof()) throw std::invalid_argument("malformed word text");
    return Word(std::move(raw), alphabet_size);
}

std::string format_word(const Word& w) {
    std::string out;
    if (w.alphabet_size() <= 9) {
        out.reserve(w.size());
        for (std::size_t i = 0; i < w.size(); ++i)
            out.push_back(static_cast<char>('0' + w[i]));
    } else {
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (i) out.push_back(' ');
            out += std::to_string(w[i]);
        }
    }
    return out;
}

Word reverse(const Word& w) {
    std::string raw(w.raw());
    std::reverse(raw.begin(), raw.end());
    return Word(std::move(raw), w.alphabet_size());
}

bool is_palindrome(std::string_view raw) {
    for (std::size_t i = 0, j = raw.size(); i + 1 < j; ++i, --j)
        if (raw[i] != raw[j - 1]) return false;
    return true;
}

std::set<Word> factor_set(const Word& w, std::size_t len) {
    std::set<Word> out;
    if (len == 0) {
        out.insert(Word("", w.alphabet_size()));
        return out;
    }
    if (len > w.size()) return out;
    std::string_view raw = w.raw();
    for (std::size_t i = 0; i + len <= raw.size(); ++i)
        out.insert(Word(std::string(raw.substr(i, len)), w.alphabet_size()));
    return out;
}

namespace {

bool has_reversible_factor(std::string_view raw, std::size_t len) {
    if (len == 0 || len > raw.size()) return false;
    std::unordered_set<std::string_view> seen;
    seen.reserve(raw.size());
    for (std::size_t i = 0; i + len <= raw.size(); ++i) seen.insert(raw.substr(i, len));
    std::string rev(len, '\0');
    for (std::string_view x : seen) {
        std::reverse_copy(x.begin(), x.end(), rev.begin());
        if (seen.count(std::string_view(rev))) return true;
    }
    return false;
}

}  // namespace

int max_reversible_factor_length(const Word& w, int cap) {
    if (cap < 1) throw std::invalid_argument("cap must be >= 1");
    if (w.empty()) return 0;
    // Reversible lengths are downward closed (a prefix of a reversible
    // factor is reversible), so binary search applies.
    int lo = 0, hi = std::min<int>(cap, static_cast<int>(w.size()));
    std::string_view raw = w.raw();
    while (lo < hi) {
        int mid = (lo + hi + 1) / 2;
        if (has_reversible_factor(raw, static_cast<std::size_t>(mid)))
            lo = mid;
        else
            hi = mid - 1;
    }
    return lo;
}

Word direct_product(const Word& u, const Word& v) {
    if (u.size() != v.size())
        throw std::invalid_argument("direct product requires equal lengths");
    int kv = v.alphabet_size();
    int k = u.alphabet_size() * kv;
    std::string raw;
    raw.reserve(u.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        raw.push_back(static_cast<char>((u[i] - 1) * kv + v[i]));
    return Word(std::move(raw), k);
}

namespace {

// True iff every window of the given length has at least min_distinct
// distinct letters. Sliding letter counts, O(n) in the word length.
bool windows_have_distinct(const Word& w, int window, int min_distinct) {
    if (window <= 0 || w.size() < static_cast<std::size_t>(window)) return true;
    std::vector<int> count(static_cast<std::size_t>(w.alphabet_size()) + 1, 0);
    int distinct = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (count[w[i]]++ == 0) ++distinct;
        if (i >= static_cast<std::size_t>(window)) {
            if (--count[w[i - window]] == 0) --distinct;
        }
        if (i + 1 >= static_cast<std::size_t>(window) && distinct < min_distinct) return false;
    }
    return true;
}

}  // namespace

bool window_properties(const Word& w, int k) {
    if (k < 3) throw std::invalid_argument("window properties need k >= 3");
    return windows_have_distinct(w, k - 2, k - 2) && windows_have_distinct(w, k, k - 1);
}

Word cyclic_word(const Word& cycle, std::size_t n) {
    if (cycle.empty()) throw std::invalid_argument("empty cycle");
    std::string raw;
    raw.reserve(n);
    for (std::size_t i = 0; i < n; ++i) raw.push_back(cycle.raw()[i % cycle.size()]);
    return Word(std::move(raw), cycle.alphabet_size());
}

}  // namespace urt
