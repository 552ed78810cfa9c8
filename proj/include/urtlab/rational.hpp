// rational.hpp -- exact rational arithmetic for exponents and thresholds.
//
// Freeness decisions hinge on ties at the threshold (forbidding exponents
// >= alpha versus > alpha), so no floating point is used anywhere in them.

#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace urt {

struct Rational {
    long long num = 0;
    long long den = 1;  // always > 0, gcd(num, den) == 1

    friend bool operator==(const Rational&, const Rational&) = default;
};

inline Rational make_rational(long long num, long long den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return Rational{num, den};
}

/// -1, 0, +1 as a < b, a == b, a > b.
inline int compare(const Rational& a, const Rational& b) {
    // Operands stay far below the int64 overflow range in this library
    // (lengths and thresholds are at most a few million).
    long long lhs = a.num * b.den;
    long long rhs = b.num * a.den;
    return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

inline bool operator<(const Rational& a, const Rational& b) { return compare(a, b) < 0; }
inline bool operator<=(const Rational& a, const Rational& b) { return compare(a, b) <= 0; }
inline bool operator>(const Rational& a, const Rational& b) { return compare(a, b) > 0; }
inline bool operator>=(const Rational& a, const Rational& b) { return compare(a, b) >= 0; }

inline std::string to_string(const Rational& r) {
    return std::to_string(r.num) + "/" + std::to_string(r.den);
}

/// Parses "p/q" or a bare integer "p". Decimal notation is rejected.
Rational parse_rational(const std::string& text);

// A freeness threshold. strict == true means alpha^+ semantics: exponents
// strictly greater than alpha are forbidden. strict == false forbids
// exponents >= alpha.
struct Threshold {
    Rational alpha;
    bool strict = false;

    /// True when a repetition with the given period and excess is forbidden.
    bool violated_by(long long period, long long excess) const {
        // exponent = (period + excess) / period, compared against alpha
        long long lhs = alpha.den * (period + excess);
        long long rhs = alpha.num * period;
        return strict ? lhs > rhs : lhs >= rhs;
    }

    /// Smallest forbidden excess for the given period (may exceed period).
    long long min_violating_excess(long long period) const {
        long long diff = (alpha.num - alpha.den) * period;
        long long e = strict ? diff / alpha.den + 1
                             : (diff + alpha.den - 1) / alpha.den;
        return e < 1 ? 1 : e;
    }
};

/// Validates 1 < alpha <= 2 and builds a threshold.
Threshold make_threshold(const Rational& alpha, bool strict);

inline std::string to_string(const Threshold& t) {
    return to_string(t.alpha) + (t.strict ? "+" : "");
}

}  // namespace urt
