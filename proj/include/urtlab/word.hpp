// word.hpp -- finite words over {1..k}, reversal, factors, direct products.

#pragma once

#include <cstdint>
#include <initializer_list>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace urt {

using Letter = int;  // 1-based; the alphabet size k is explicit context

// A finite word over {1..k}. Letters are stored as raw byte values (not
// ASCII) in an std::string so factor extraction and hashing stay cheap.
// Comparison and equality look at the letter sequence only; the alphabet
// size is carried as context and never inferred from content (a word may
// omit letters of its alphabet).
class Word {
public:
    Word() = default;
    Word(std::string letters, int alphabet_size);
    Word(std::initializer_list<int> letters, int alphabet_size);

    static Word from_digits(std::string_view digits, int alphabet_size);

    int alphabet_size() const { return k_; }
    std::size_t size() const { return data_.size(); }
    bool empty() const { return data_.empty(); }

    Letter operator[](std::size_t i) const { return static_cast<unsigned char>(data_[i]); }

    std::string_view raw() const { return data_; }

    void push_back(Letter c);
    void pop_back() { data_.pop_back(); }
    void append(const Word& other) { data_.append(other.data_); }

    Word subword(std::size_t pos, std::size_t len) const;
    Word prefix(std::size_t len) const { return subword(0, len); }

    friend bool operator==(const Word& a, const Word& b) { return a.data_ == b.data_; }
    friend auto operator<=>(const Word& a, const Word& b) { return a.data_ <=> b.data_; }

private:
    std::string data_;
    int k_ = 0;
};

Word operator+(const Word& a, const Word& b);

/// Parses the word text format: for k <= 9 a contiguous digit string
/// ("12321"), for any k a whitespace-separated list of decimal letters
/// ("1 2 11 3"). Both forms are accepted regardless of k.
Word parse_word(std::string_view text, int alphabet_size);

/// Emits the word text format; contiguous digits when k <= 9.
std::string format_word(const Word& w);

Word reverse(const Word& w);

bool is_palindrome(std::string_view raw);

/// All distinct factors of w of exactly the given length.
/// factor_set(w, 0) == {empty word}.
std::set<Word> factor_set(const Word& w, std::size_t len);

/// Largest L <= cap such that some factor x of length L has its reversal
/// also a factor of w; 0 only for the empty word. A result equal to cap
/// means "at least cap".
int max_reversible_factor_length(const Word& w, int cap);

/// Letter-wise pairing of two equal-length words. The product letter of
/// (a, b) is (a-1)*k_v + b over the alphabet of size k_u*k_v; this
/// renumbering is fixed so emitted words are reproducible.
Word direct_product(const Word& u, const Word& v);

/// True iff every length k-2 factor of w has k-2 distinct letters and
/// every length k factor has at least k-1 distinct letters (vacuously
/// true for short words).
bool window_properties(const Word& w, int k);

/// Prefix of length n of the periodic word cycle^omega.
Word cyclic_word(const Word& cycle, std::size_t n);

}  // namespace urt
