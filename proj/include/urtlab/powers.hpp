// powers.hpp -- exact exponents and detection of ordinary, reverse, and
// undirected fractional powers.
//
// A witness locates a factor x y x' of the host word, where x is nonempty
// and x' is either x (ordinary, a gapped repeat) or the reversal of x
// (reverse, a gapped palindrome). period == |xy|, excess == |x|, and the
// exponent is (period+excess)/period, always in (1, 2].

#pragma once

#include <string>
#include <vector>

#include "urtlab/rational.hpp"
#include "urtlab/word.hpp"

namespace urt {

enum class WitnessKind { ordinary, reverse, both };

std::string to_string(WitnessKind kind);

struct PowerWitness {
    int start = 0;   // 0-based position of x
    int period = 0;  // |xy|
    int excess = 0;  // |x|, 1 <= excess <= period
    WitnessKind kind = WitnessKind::ordinary;

    Rational exponent() const { return make_rational(period + excess, period); }

    /// Re-checks the located factorization against the host word.
    bool verify(const Word& w) const;

    friend bool operator==(const PowerWitness&, const PowerWitness&) = default;
    friend auto operator<=>(const PowerWitness&, const PowerWitness&) = default;
};

std::string witness_json(const PowerWitness& w);
std::string witnesses_json(const std::vector<PowerWitness>& ws);

struct ExponentReport {
    int length = 0;
    int minimal_period = 0;
    Rational exponent;
};

/// Smallest q >= 1 with w[i+q] == w[i] for all valid i. Requires |w| >= 1.
int minimal_period(const Word& w);

/// |w| / minimal_period(w), exact.
ExponentReport exponent(const Word& w);

struct ScanOptions {
    // Report every violating (start, period, excess) triple instead of only
    // the largest excess per (start, period, kind). Output may be cubic;
    // meant for oracle comparison on short words.
    bool exhaustive = false;
    // Use the OpenMP kernel. The result is identical and deterministically
    // ordered either way.
    bool parallel = true;
    // When > 0, reverse witnesses are only sought with excess <= cap.
    int reverse_excess_cap = 0;
    // When > 0, only witnesses with period+excess <= max_span are reported.
    // Honored by the naive scanner and by exhaustive mode.
    int max_span = 0;
};

/// All maximal witnesses whose exponent violates the threshold, sorted by
/// (start, period, excess, kind). Per (start, period) the largest valid
/// excess of each kind is reported; when the ordinary and reverse maxima
/// coincide the witness is tagged WitnessKind::both (x is then a
/// palindrome).
std::vector<PowerWitness> scan_undirected(const Word& w, const Threshold& t,
                                          const ScanOptions& opts = {});

/// Ordinary witnesses only.
std::vector<PowerWitness> scan_ordinary(const Word& w, const Threshold& t,
                                        const ScanOptions& opts = {});

/// Serial reference scanner that tests every (start, period, excess)
/// triple independently. Kept as the oracle for the fast kernel.
std::vector<PowerWitness> scan_undirected_naive(const Word& w, const Threshold& t,
                                                const ScanOptions& opts = {});
std::vector<PowerWitness> scan_ordinary_naive(const Word& w, const Threshold& t,
                                              const ScanOptions& opts = {});

bool is_undirected_free(const Word& w, const Threshold& t);

/// True iff w contains X1 X2 ... Xm with all blocks nonempty, of equal
/// length, and each Xi equal to X1 or to its reversal.
bool contains_unary_pattern(const Word& w, int m);

}  // namespace urt
