#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "urtlab/morphism.hpp"
#include "urtlab/pansiot.hpp"
#include "urtlab/powers.hpp"
#include "urtlab/prover.hpp"
#include "urtlab/word.hpp"

using namespace urt;

namespace {

Threshold thr(long long p, long long q, bool strict) {
    return make_threshold(make_rational(p, q), strict);
}

}  // namespace

TEST_CASE("maximal avoiding words over four and five letters") {
    SearchOutcome four = backtrack_max_length(4, thr(3, 2, false));
    CHECK(four.max_length == 7);
    REQUIRE(!four.witnesses.empty());
    for (const Word& w : four.witnesses) {
        CHECK(w.size() == 7);
        CHECK(is_undirected_free(w, thr(3, 2, false)));
        // no extension stays free
        for (int c = 1; c <= 4; ++c) {
            Word ext = w;
            ext.push_back(c);
            CHECK_FALSE(is_undirected_free(ext, thr(3, 2, false)));
        }
    }

    SearchOutcome five = backtrack_max_length(5, thr(4, 3, false));
    CHECK(five.max_length == 8);
}

TEST_CASE("symmetry reduction preserves the answer") {
    for (int k : {4, 5}) {
        Threshold t = thr(k - 1, k - 2, false);
        BacktrackOptions sym;
        sym.symmetry = true;
        SearchOutcome plain = backtrack_max_length(k, t);
        SearchOutcome reduced = backtrack_max_length(k, t, sym);
        CHECK(plain.max_length == reduced.max_length);
        CHECK(reduced.nodes_expanded < plain.nodes_expanded);
    }
    // unsound reductions are refused
    BacktrackOptions sym;
    sym.symmetry = true;
    CHECK_THROWS_AS(backtrack_max_length(9, thr(2, 1, false), sym), std::invalid_argument);
}

TEST_CASE("binary words avoiding the mirrored cube max out at length 9") {
    BacktrackOptions opts;
    opts.pattern_m = 3;
    SearchOutcome out = backtrack_max_length(2, thr(2, 1, false), opts);
    CHECK(out.max_length == 9);
    for (const Word& w : out.witnesses) {
        CHECK(w.size() == 9);
        CHECK_FALSE(contains_unary_pattern(w, 3));
    }
}

TEST_CASE("node budget aborts the search") {
    BacktrackOptions opts;
    opts.max_nodes = 50;
    CHECK_THROWS_AS(backtrack_max_length(4, thr(3, 2, false), opts), BudgetExceeded);
}

TEST_CASE("dead-end factor table") {
    for (int k : {6, 7, 10}) {
        Report r = check_leaf_factors(k);
        CHECK(r.all_pass());
        CHECK(r.checks.size() == 12);  // exponent chain plus eleven leaves
    }
    CHECK_THROWS_AS(check_leaf_factors(5), std::invalid_argument);
}

TEST_CASE("ternary construction checks") {
    Report r = verify_urt3(2000);
    CHECK(r.all_pass());
    // report schema is stable and machine readable
    std::string json = report_json(r);
    CHECK(json.find("\"theorem\":\"urt3\"") != std::string::npos);
    CHECK(json.find("\"checks\":[") != std::string::npos);
}

TEST_CASE("kernel pairs for the four letter construction") {
    KernelSearchResult r = kernel_search(4);
    CHECK(r.report.all_pass());
    REQUIRE(r.pairs.size() == 2);
    CHECK(r.pairs[0].pi_s == parse_word("2121", 2));
    CHECK(r.pairs[0].eta_s.empty());
    CHECK(r.pairs[1].pi_s == parse_word("2112112212", 2));
    CHECK(r.pairs[1].eta_s == parse_word("21", 2));

    std::vector<KernelPair> survivors = refined_k4_filter(r.pairs);
    CHECK(survivors.empty());

    CHECK_THROWS_AS(kernel_search(6), std::invalid_argument);
}

TEST_CASE("refined filter keeps pairs that defeat the sharpened bound") {
    // |pi| = 4 < 2|eta| + 4 = 8 survives
    std::vector<KernelPair> pairs{{parse_word("1212", 2), parse_word("12", 2)}};
    CHECK(refined_k4_filter(pairs).size() == 1);
    // unbalanced pairs are kept conservatively
    std::vector<KernelPair> unbalanced{{parse_word("1111", 2), Word({}, 2)}};
    CHECK(refined_k4_filter(unbalanced).size() == 1);
    CHECK(refined_k4_filter({}).empty());
}

TEST_CASE("telescoped lengths") {
    CHECK(telescope_lengths(0, 3, 2, 7, 5) == std::pair<long long, long long>{7, 5});
    // two rounds of the k=4 shape: eta grows to r^s*eta + r^s - 1
    CHECK(telescope_lengths(2, 3, 2, 4, 1).second == 17);
    CHECK(telescope_lengths(2, 3, 2, 4, 1).first == 36);
    // the k in {8,12} shape has no common-prefix correction
    CHECK(telescope_lengths(3, 15, 0, 1, 2).second == 2 * 15 * 15 * 15);
    CHECK_THROWS_AS(telescope_lengths(-1, 3, 2, 1, 1), std::invalid_argument);
}

TEST_CASE("intertwiner conjugates the telescoped generators") {
    for (int k : {4, 8, 12}) {
        Permutation phi = find_intertwiner(k);
        const Morphism& f = k == 4   ? builtin(BuiltinMorphism::f4)
                            : k == 8 ? builtin(BuiltinMorphism::f8)
                                     : builtin(BuiltinMorphism::f12);
        std::array<Permutation, 2> tk = tau(k);
        Permutation inv = phi.inverse();
        for (int a = 1; a <= 2; ++a) {
            Permutation lhs = compose(
                compose(phi, eval_word(std::span<const Permutation>(tk), f.image(a))), inv);
            CHECK(lhs == tk[static_cast<std::size_t>(a - 1)]);
        }
    }
}

TEST_CASE("constructed words") {
    CHECK(construct_w(4, 3) == parse_word("123", 4));
    CHECK_THROWS_AS(construct_w(4, 2), std::invalid_argument);
    CHECK_THROWS_AS(construct_w(5, 10), std::invalid_argument);

    // prefixes are nested
    Word big = construct_w(4, 400);
    CHECK(construct_w(4, 150) == big.prefix(150));

    // the code of the constructed word is the image of the fixed point
    for (int k : {4, 8, 12}) {
        Word w = construct_w(k, 200);
        EncodingResult enc = encode(w, k);
        const Morphism& f = k == 4   ? builtin(BuiltinMorphism::f4)
                            : k == 8 ? builtin(BuiltinMorphism::f8)
                                     : builtin(BuiltinMorphism::f12);
        Word expected_code =
            apply(builtin(BuiltinMorphism::g), fixed_point_prefix(f, 1, enc.code.size()))
                .prefix(enc.code.size());
        CHECK(enc.code == expected_code);
    }
}

TEST_CASE("main construction verifies on a short prefix") {
    for (int k : {4, 8}) {
        Report r = verify_main(k, 600);
        CHECK(r.all_pass());
    }
    VerifyMainOptions full;
    full.full_reverse_scan = true;
    CHECK(verify_main(4, 300, full).all_pass());
}

TEST_CASE("free words exist at every length up to the maximum") {
    // spot check: a maximal word from the search stays free under the scanner
    SearchOutcome four = backtrack_max_length(4, thr(3, 2, false));
    REQUIRE(!four.witnesses.empty());
    Word w = four.witnesses.front();
    CHECK(scan_undirected(w, thr(3, 2, false)).empty());
    CHECK(scan_undirected_naive(w, thr(3, 2, false)).empty());
}
