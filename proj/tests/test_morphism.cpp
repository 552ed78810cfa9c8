#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <fstream>
#include <optional>
#include <random>

#include "urtlab/morphism.hpp"
#include "urtlab/word.hpp"

using namespace urt;

namespace {

// Literal-definition oracle for cuts: enumerate every context string p, s
// up to the radius, keep the pairs with p.w.s parseable, and intersect the
// boundary positions i where p.w[0..i) is parseable.
bool parses(std::string_view raw, const PrefixCode& code) {
    std::vector<char> reach(raw.size() + 1, 0);
    reach[0] = 1;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (!reach[i]) continue;
        for (const Word& b : code) {
            std::string_view blk = b.raw();
            if (i + blk.size() <= raw.size() && raw.substr(i, blk.size()) == blk)
                reach[i + blk.size()] = 1;
        }
    }
    return reach[raw.size()];
}

std::optional<std::vector<int>> cuts_bruteforce(const Word& w, const PrefixCode& code,
                                                int radius) {
    int alphabet = 0;
    for (const Word& b : code) alphabet = std::max(alphabet, b.alphabet_size());
    std::vector<std::string> contexts{""};
    for (std::size_t head = 0; head < contexts.size(); ++head) {
        std::string c = contexts[head];
        if (static_cast<int>(c.size()) >= radius) continue;
        for (int a = 1; a <= alphabet; ++a) contexts.push_back(c + static_cast<char>(a));
    }
    std::vector<char> allowed(w.size() + 1, 1);
    bool any = false;
    for (const std::string& p : contexts) {
        bool p_valid = false;
        for (const std::string& s : contexts) {
            if (parses(p + std::string(w.raw()) + s, code)) {
                p_valid = true;
                break;
            }
        }
        if (!p_valid) continue;
        any = true;
        for (std::size_t i = 0; i <= w.size(); ++i)
            if (!parses(p + std::string(w.raw().substr(0, i)), code)) allowed[i] = 0;
    }
    if (!any) return std::nullopt;
    std::vector<int> out;
    for (std::size_t i = 0; i <= w.size(); ++i)
        if (allowed[i]) out.push_back(static_cast<int>(i));
    return out;
}

}  // namespace

TEST_CASE("builtin tables match the published digit strings") {
    CHECK(builtin_table_digits(BuiltinMorphism::f24, 1) == "012021201021012102120210");
    CHECK(builtin_table_digits(BuiltinMorphism::f24, 2) == "120102012102120210201021");
    CHECK(builtin_table_digits(BuiltinMorphism::f24, 3) == "201210120210201021012102");
    CHECK(builtin_table_digits(BuiltinMorphism::f4, 1) == "121");
    CHECK(builtin_table_digits(BuiltinMorphism::f4, 2) == "122");
    CHECK(builtin_table_digits(BuiltinMorphism::f8, 1) == "121212112122121");
    CHECK(builtin_table_digits(BuiltinMorphism::f8, 2) == "211212122122112");
    CHECK(builtin_table_digits(BuiltinMorphism::f12, 1) == "121212121211212122121");
    CHECK(builtin_table_digits(BuiltinMorphism::f12, 2) == "212122112121121212212");
    CHECK(builtin_table_digits(BuiltinMorphism::g, 1) == "31");
    CHECK(builtin_table_digits(BuiltinMorphism::g, 2) == "312");
}

TEST_CASE("builtin derived data") {
    CHECK(builtin(BuiltinMorphism::f24).uniform_length() == 24);
    CHECK(builtin(BuiltinMorphism::f4).uniform_length() == 3);
    CHECK(builtin(BuiltinMorphism::f8).uniform_length() == 15);
    CHECK(builtin(BuiltinMorphism::f12).uniform_length() == 21);
    CHECK(builtin(BuiltinMorphism::g).uniform_length() == 0);

    CHECK(builtin(BuiltinMorphism::f4).common_prefix() == parse_word("12", 2));
    CHECK(builtin(BuiltinMorphism::f8).common_prefix().empty());
    CHECK(builtin(BuiltinMorphism::f12).common_prefix().empty());
    CHECK(builtin(BuiltinMorphism::g).common_prefix() == parse_word("31", 3));

    // the two images of each binary builtin end in different letters
    for (BuiltinMorphism which : {BuiltinMorphism::f4, BuiltinMorphism::f8,
                                  BuiltinMorphism::f12, BuiltinMorphism::g}) {
        const Morphism& h = builtin(which);
        CHECK(h.final_letter(1) != h.final_letter(2));
    }
    CHECK_THROWS_AS(builtin_by_name("nope"), std::invalid_argument);
}

TEST_CASE("apply") {
    const Morphism& g = builtin(BuiltinMorphism::g);
    CHECK(apply(g, parse_word("12", 2)) == parse_word("31312", 3));
    CHECK(apply(g, Word({}, 2)).empty());
    CHECK(apply(builtin(BuiltinMorphism::f4), parse_word("1", 2)) == parse_word("121", 2));
    CHECK_THROWS_AS(apply(g, parse_word("123", 3)), std::invalid_argument);

    std::mt19937 rng(5);
    for (int it = 0; it < 100; ++it) {
        Word u({}, 2), v({}, 2);
        for (std::size_t i = rng() % 8; i-- > 0;) u.push_back(1 + static_cast<int>(rng() % 2));
        for (std::size_t i = rng() % 8; i-- > 0;) v.push_back(1 + static_cast<int>(rng() % 2));
        CHECK(apply(g, u + v) == apply(g, u) + apply(g, v));
    }
}

TEST_CASE("fixed point prefixes") {
    const Morphism& f4 = builtin(BuiltinMorphism::f4);
    CHECK(fixed_point_prefix(f4, 1, 9) == parse_word("121122121", 2));
    CHECK(fixed_point_prefix(f4, 1, 1) == parse_word("1", 2));

    const Morphism& f24 = builtin(BuiltinMorphism::f24);
    CHECK(fixed_point_prefix(f24, 1, 24) == f24.image(1));

    // prefixes are nested
    FixedPointStream stream(f4, 1);
    Word small = stream.prefix(40);
    Word large = stream.prefix(200);
    CHECK(large.prefix(40) == small);

    // uniform growth: |h(w)| = r|w|
    Word w = fixed_point_prefix(f4, 1, 27);
    CHECK(apply(f4, w).size() == 81);

    CHECK_THROWS_AS(fixed_point_prefix(f4, 2, 5), std::invalid_argument);
    CHECK_THROWS_AS(fixed_point_prefix(builtin(BuiltinMorphism::g), 1, 5),
                    std::invalid_argument);
}

TEST_CASE("morphism files") {
    const char* path = "morphism_test_tmp.txt";
    {
        std::ofstream out(path);
        out << "# comment\n1 -> 121\n2 -> 122\n";
    }
    Morphism h = parse_morphism_file(path);
    CHECK(h.domain_size() == 2);
    CHECK(h.image(1) == parse_word("121", 2));
    CHECK(h.uniform_length() == 3);
    std::remove(path);
    CHECK_THROWS(parse_morphism_file("no_such_file_urtlab"));
}

TEST_CASE("cuts of a mirrored-block code") {
    // code {12, 21}: the word 22 is forced to split in the middle
    PrefixCode code{parse_word("12", 2), parse_word("21", 2)};
    CHECK(cuts(parse_word("22", 2), code) == std::vector<int>{1});
    CHECK(cut_free(Word({}, 2), code));
    CHECK_THROWS_AS(cuts(parse_word("22122", 2), code), WordNotInCode);
    // "12" also occurs straddling two blocks (as in 21|21), so nothing is forced
    CHECK(cut_free(parse_word("12", 2), code));
}

TEST_CASE("blocks that only occur aligned are cut at both ends") {
    PrefixCode code = blocks_of(builtin(BuiltinMorphism::f4));
    CHECK(cuts(parse_word("121", 2), code) == std::vector<int>{0, 3});
}

TEST_CASE("cuts reject degenerate codes") {
    PrefixCode bad{parse_word("12", 2), parse_word("12", 2)};
    CHECK_THROWS_AS(cuts(parse_word("1", 2), bad), std::invalid_argument);
    CHECK_THROWS_AS(cuts(parse_word("1", 2), PrefixCode{}), std::invalid_argument);
}

TEST_CASE("cuts agree with the literal-definition oracle") {
    const Morphism& f4 = builtin(BuiltinMorphism::f4);
    PrefixCode code4 = blocks_of(f4);
    Word host = fixed_point_prefix(f4, 1, 243);
    std::set<std::string> seen;
    for (std::size_t len = 1; len <= 4; ++len)
        for (std::size_t i = 0; i + len <= host.size(); ++i)
            seen.insert(std::string(host.raw().substr(i, len)));
    for (const std::string& raw : seen) {
        Word w(raw, 2);
        auto expected = cuts_bruteforce(w, code4, 6);
        REQUIRE(expected.has_value());
        CHECK(cuts(w, code4) == *expected);
    }

    // same over the non-uniform encoding code {31, 312}
    const Morphism& g = builtin(BuiltinMorphism::g);
    PrefixCode codeg = blocks_of(g);
    Word ghost = apply(g, fixed_point_prefix(f4, 1, 81));
    std::set<std::string> gseen;
    for (std::size_t len = 1; len <= 5; ++len)
        for (std::size_t i = 0; i + len <= ghost.size(); ++i)
            gseen.insert(std::string(ghost.raw().substr(i, len)));
    for (const std::string& raw : gseen) {
        Word w(raw, 3);
        auto expected = cuts_bruteforce(w, codeg, 6);
        REQUIRE(expected.has_value());
        CHECK(cuts(w, codeg) == *expected);
    }
}

TEST_CASE("cut-free excesses of the k=4 construction") {
    const Morphism& f4 = builtin(BuiltinMorphism::f4);
    PrefixCode code = blocks_of(f4);
    CHECK(cut_free(parse_word("21", 2), code));
    CHECK_FALSE(cut_free(parse_word("12", 2), code));
    CHECK_FALSE(cut_free(parse_word("11", 2), code));
    CHECK(cuts(parse_word("11", 2), code) == std::vector<int>{1});

    // every factor of length r = 3 of the fixed point contains a cut
    Word host = fixed_point_prefix(f4, 1, 729);
    for (const Word& x : factor_set(host, 3)) CHECK_FALSE(cut_free(x, code));
}

TEST_CASE("cuts extend to containing factors") {
    const Morphism& f4 = builtin(BuiltinMorphism::f4);
    PrefixCode code = blocks_of(f4);
    Word host = fixed_point_prefix(f4, 1, 243);
    std::mt19937 rng(9);
    for (int it = 0; it < 80; ++it) {
        std::size_t len = 3 + rng() % 4;
        std::size_t pos = rng() % (host.size() - len);
        Word w = host.subword(pos, len);
        Word inner = w.subword(1, len - 2);
        std::vector<int> outer_cuts = cuts(w, code);
        std::vector<int> inner_cuts = cuts(inner, code);
        // a cut survives into every containing factor, shifted by the offset
        for (int c : inner_cuts)
            CHECK(std::find(outer_cuts.begin(), outer_cuts.end(), c + 1) != outer_cuts.end());
    }
}

TEST_CASE("stable factor sets") {
    const Morphism& f4 = builtin(BuiltinMorphism::f4);
    StableFactorSet s1 = stable_factor_set(f4, 1, 1);
    CHECK(s1.factors == std::set<Word>{parse_word("1", 2), parse_word("2", 2)});

    // direct double-iterate oracle at max_len 3
    StableFactorSet s3 = stable_factor_set(f4, 1, 3);
    Word it5 = fixed_point_prefix(f4, 1, 243);
    Word it6 = fixed_point_prefix(f4, 1, 729);
    std::set<Word> expect, expect6;
    for (std::size_t len = 1; len <= 3; ++len) {
        for (const Word& x : factor_set(it5, len)) expect.insert(x);
        for (const Word& x : factor_set(it6, len)) expect6.insert(x);
    }
    CHECK(expect == expect6);  // the certificate, recomputed directly
    CHECK(s3.factors == expect);

    CHECK_THROWS_AS(stable_factor_set(builtin(BuiltinMorphism::g), 1, 3),
                    std::invalid_argument);
}

TEST_CASE("factor sets of the ternary construction stabilize at the third iterate") {
    const Morphism& f24 = builtin(BuiltinMorphism::f24);
    StableFactorSet s = stable_factor_set(f24, 1, 20);
    CHECK(s.level == 3);
    Word f3 = fixed_point_prefix(f24, 1, 13824);
    std::set<Word> expect;
    for (std::size_t len = 1; len <= 20; ++len)
        for (const Word& x : factor_set(f3, len)) expect.insert(x);
    CHECK(s.factors == expect);
}
