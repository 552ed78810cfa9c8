#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "urtlab/powers.hpp"
#include "urtlab/word.hpp"

using namespace urt;

namespace {

Word random_word(std::mt19937& rng, int k, std::size_t len) {
    std::uniform_int_distribution<int> dist(1, k);
    Word w({}, k);
    for (std::size_t i = 0; i < len; ++i) w.push_back(dist(rng));
    return w;
}

Threshold thr(long long p, long long q, bool strict) {
    return make_threshold(make_rational(p, q), strict);
}

// independent minimal period: try every q
int minimal_period_bruteforce(const Word& w) {
    for (int q = 1; q <= static_cast<int>(w.size()); ++q) {
        bool ok = true;
        for (std::size_t i = 0; i + static_cast<std::size_t>(q) < w.size() && ok; ++i)
            ok = w[i] == w[i + static_cast<std::size_t>(q)];
        if (ok) return q;
    }
    return static_cast<int>(w.size());
}

}  // namespace

TEST_CASE("minimal period and exponent") {
    // a=1 l=2 f=3 spells "alfalfa"
    Word alfalfa({1, 2, 3, 1, 2, 3, 1}, 3);
    CHECK(minimal_period(alfalfa) == 3);
    CHECK(exponent(alfalfa).exponent == make_rational(7, 3));

    CHECK(minimal_period(parse_word("1111", 1)) == 1);
    CHECK(minimal_period(parse_word("123", 3)) == 3);
    CHECK(exponent(parse_word("11", 1)).exponent == make_rational(2, 1));
    CHECK(exponent(parse_word("12312", 3)).exponent == make_rational(5, 3));
    CHECK_THROWS_AS(minimal_period(Word({}, 2)), std::invalid_argument);

    std::mt19937 rng(3);
    for (int it = 0; it < 300; ++it) {
        Word w = random_word(rng, 2 + static_cast<int>(rng() % 2), 1 + rng() % 14);
        CHECK(minimal_period(w) == minimal_period_bruteforce(w));
    }
}

TEST_CASE("threshold semantics distinguish strict from non-strict") {
    // e=1 d=2 i=3 t=4 spells "edited": an ordinary 3/2 repetition
    Word edited({1, 2, 3, 4, 1, 2}, 4);
    CHECK(scan_undirected(edited, thr(3, 2, true)).empty());
    std::vector<PowerWitness> ws = scan_undirected(edited, thr(3, 2, false));
    REQUIRE(ws.size() == 1);
    CHECK(ws[0] == PowerWitness{0, 4, 2, WitnessKind::ordinary});
    CHECK(ws[0].exponent() == make_rational(3, 2));
    CHECK(ws[0].verify(edited));
}

TEST_CASE("reverse repetitions are found") {
    // r=1 e=2 n=3 d=4 spells "render": x="re" reappears reversed
    Word render({1, 2, 3, 4, 2, 1}, 4);
    std::vector<PowerWitness> ws = scan_undirected(render, thr(3, 2, false));
    REQUIRE(ws.size() == 1);
    CHECK(ws[0] == PowerWitness{0, 4, 2, WitnessKind::reverse});
    CHECK(ws[0].verify(render));
    CHECK(scan_ordinary(render, thr(3, 2, false)).empty());
}

TEST_CASE("palindromic excess reported once as both") {
    Word aa = parse_word("11", 1);
    std::vector<PowerWitness> ws = scan_undirected(aa, thr(2, 1, false));
    REQUIRE(ws.size() == 1);
    CHECK(ws[0] == PowerWitness{0, 1, 1, WitnessKind::both});

    CHECK(scan_undirected(parse_word("123", 3), thr(3, 2, false)).empty());
    CHECK(is_undirected_free(Word({}, 3), thr(3, 2, false)));
    CHECK_FALSE(is_undirected_free(parse_word("11", 2), thr(2, 1, false)));
}

TEST_CASE("witness JSON is stable") {
    PowerWitness w{0, 4, 2, WitnessKind::reverse};
    CHECK(witness_json(w) ==
          R"({"start":0,"period":4,"excess":2,"kind":"reverse","exponent":"3/2"})");
}

TEST_CASE("fast scanner agrees with the naive reference") {
    std::mt19937 rng(23);
    std::vector<Threshold> thresholds = {thr(2, 1, false), thr(7, 4, true), thr(3, 2, false),
                                         thr(4, 3, false), thr(5, 4, true)};
    for (int it = 0; it < 400; ++it) {
        int k = 2 + static_cast<int>(rng() % 3);
        Word w = random_word(rng, k, 1 + rng() % 28);
        const Threshold& t = thresholds[it % thresholds.size()];
        ScanOptions serial;
        serial.parallel = false;
        CHECK(scan_undirected(w, t) == scan_undirected_naive(w, t));
        CHECK(scan_undirected(w, t, serial) == scan_undirected_naive(w, t));
        CHECK(scan_ordinary(w, t) == scan_ordinary_naive(w, t));

        ScanOptions ex;
        ex.exhaustive = true;
        CHECK(scan_undirected(w, t, ex) == scan_undirected_naive(w, t, ex));

        ScanOptions capped;
        capped.reverse_excess_cap = 2;
        CHECK(scan_undirected(w, t, capped) == scan_undirected_naive(w, t, capped));
    }
}

TEST_CASE("exhaustive enumeration over all short ternary words") {
    // every ternary word of length <= 8; the acceptance suite pushes this
    // to length 12
    std::vector<Threshold> thresholds = {thr(7, 4, true), thr(3, 2, false)};
    for (int len = 0; len <= 8; ++len) {
        long long total = 1;
        for (int i = 0; i < len; ++i) total *= 3;
        for (long long code = 0; code < total; ++code) {
            long long c = code;
            Word w({}, 3);
            for (int i = 0; i < len; ++i) {
                w.push_back(static_cast<int>(c % 3) + 1);
                c /= 3;
            }
            for (const Threshold& t : thresholds) {
                CHECK(scan_undirected(w, t) == scan_undirected_naive(w, t));
                ScanOptions ex;
                ex.exhaustive = true;
                CHECK(scan_undirected(w, t, ex) == scan_undirected_naive(w, t, ex));
            }
        }
    }
}

TEST_CASE("scan properties") {
    std::mt19937 rng(31);
    Threshold t = thr(3, 2, false);
    for (int it = 0; it < 200; ++it) {
        Word w = random_word(rng, 3, 2 + rng() % 20);

        // hierarchy: ordinary witnesses appear among undirected ones with
        // the same location (possibly tagged both)
        std::vector<PowerWitness> ord = scan_ordinary(w, t);
        std::vector<PowerWitness> und = scan_undirected(w, t);
        for (const PowerWitness& o : ord) {
            bool found = false;
            for (const PowerWitness& u : und)
                found = found || (u.start == o.start && u.period == o.period &&
                                  u.excess == o.excess && u.kind != WitnessKind::reverse);
            CHECK(found);
        }

        // reversal symmetry of freeness
        CHECK(is_undirected_free(w, t) == is_undirected_free(reverse(w), t));

        // factor closure
        if (is_undirected_free(w, t) && w.size() >= 4) {
            Word part = w.subword(1, w.size() - 2);
            CHECK(is_undirected_free(part, t));
        }

        // threshold monotonicity
        if (is_undirected_free(w, t)) CHECK(is_undirected_free(w, thr(7, 4, false)));

        // every witness re-checks against the host word
        for (const PowerWitness& u : und) CHECK(u.verify(w));
    }
}

TEST_CASE("whole-word ordinary witnesses bound the exponent") {
    std::mt19937 rng(37);
    for (int it = 0; it < 200; ++it) {
        Word w = random_word(rng, 2, 2 + rng() % 12);
        ScanOptions ex;
        ex.exhaustive = true;
        for (const PowerWitness& u : scan_ordinary(w, thr(2, 1, true), ex)) {
            if (u.start == 0 && u.period + u.excess == static_cast<int>(w.size()))
                CHECK(exponent(w).exponent >= u.exponent());
        }
    }
}

TEST_CASE("mirrored unary patterns") {
    CHECK(contains_unary_pattern(parse_word("111", 2), 3));
    CHECK_FALSE(contains_unary_pattern(parse_word("1212", 2), 3));
    CHECK_FALSE(contains_unary_pattern(Word({}, 2), 2));
    CHECK_THROWS_AS(contains_unary_pattern(parse_word("11", 2), 1), std::invalid_argument);

    // mirrored blocks count: 12.21.12 is such an occurrence for m=3
    CHECK(contains_unary_pattern(parse_word("122112", 2), 3));

    // brute force comparison on all short binary words
    for (int len = 0; len <= 12; ++len) {
        for (long long code = 0; code < (1LL << len); ++code) {
            Word w({}, 2);
            for (int i = 0; i < len; ++i) w.push_back(static_cast<int>((code >> i) & 1) + 1);
            bool expected = false;
            for (int bl = 1; 3 * bl <= len && !expected; ++bl)
                for (int s = 0; s + 3 * bl <= len && !expected; ++s) {
                    Word x = w.subword(static_cast<std::size_t>(s), static_cast<std::size_t>(bl));
                    Word rx = reverse(x);
                    bool ok = true;
                    for (int j = 1; j < 3 && ok; ++j) {
                        Word b = w.subword(static_cast<std::size_t>(s + j * bl),
                                           static_cast<std::size_t>(bl));
                        ok = b == x || b == rx;
                    }
                    expected = ok;
                }
            CHECK(contains_unary_pattern(w, 3) == expected);
        }
    }
}
