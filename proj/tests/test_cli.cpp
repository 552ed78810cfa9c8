#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cstdio>
#include <string>

#include "urtlab/prover.hpp"
#include "urtlab/rational.hpp"
#include "urtlab/word.hpp"

namespace {

struct CliResult {
    int exit_code;
    std::string out;
};

CliResult run_cli(const std::string& args, const std::string& stdin_text = "") {
    std::string cmd;
    if (!stdin_text.empty()) cmd += "printf '%s' '" + stdin_text + "' | ";
    cmd += std::string(URTLAB_BIN) + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf{};
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    while (fgets(buf.data(), buf.size(), pipe)) out += buf.data();
    int status = pclose(pipe);
    return CliResult{WEXITSTATUS(status), out};
}

}  // namespace

TEST_CASE("check exit codes and witnesses") {
    CliResult bad = run_cli("check --k 4 --threshold 3/2", "1234123");
    CHECK(bad.exit_code == 1);
    CHECK(bad.out.find("ordinary") != std::string::npos);

    // a maximal free word from the search scans clean through the CLI
    urt::SearchOutcome four =
        urt::backtrack_max_length(4, urt::make_threshold(urt::make_rational(3, 2), false));
    REQUIRE(!four.witnesses.empty());
    CliResult good =
        run_cli("check --k 4 --threshold 3/2", urt::format_word(four.witnesses.front()));
    CHECK(good.exit_code == 0);
    CHECK(good.out.find("free") != std::string::npos);

    CliResult json = run_cli("check --k 4 --threshold 3/2 --json --word 1234123");
    CHECK(json.exit_code == 1);
    CHECK(json.out.find("\"kind\":\"ordinary\"") != std::string::npos);
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run_cli("check --k 4").exit_code == 2);
    CHECK(run_cli("nonsense").exit_code == 2);
    CHECK(run_cli("check --k 4 --threshold 1.5 --word 123").exit_code == 2);
    CHECK(run_cli("check --k 4 --threshold 3/2 --word 129").exit_code == 2);
    CHECK(run_cli("verify --theorem nope").exit_code == 2);
}

TEST_CASE("budget exhaustion exits with 3") {
    CHECK(run_cli("prove-lower-bound --k 4 --threshold 3/2 --max-nodes 10").exit_code == 3);
}

TEST_CASE("encode and decode round trip") {
    CliResult enc = run_cli("encode --k 5 --word 12342541243");
    CHECK(enc.exit_code == 0);
    CHECK(enc.out == "prefix 1234\ncode 3131231\n");

    CliResult encj = run_cli("encode --k 5 --json", "12342541243");
    CHECK(encj.out ==
          R"({"prefix":"1234","code":"3131231","ranking":[5,1,2,3,4]})"
          "\n");

    CliResult dec = run_cli("decode --k 5 --prefix 1234 --code 3131231");
    CHECK(dec.exit_code == 0);
    CHECK(dec.out == "12342541243\n");
}

TEST_CASE("lower bound search") {
    CliResult r = run_cli("prove-lower-bound --k 4 --threshold 3/2 --json");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"max_length\":7") != std::string::npos);

    CliResult pat = run_cli("prove-lower-bound --k 2 --pattern-m 3 --json");
    CHECK(pat.out.find("\"max_length\":9") != std::string::npos);
}

TEST_CASE("verify subcommand") {
    CliResult r = run_cli("verify --theorem main-4 --length 400 --json");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"theorem\":\"main-k4\"") != std::string::npos);
    CHECK(r.out.find("false") == std::string::npos);
}

TEST_CASE("kernel search output") {
    CliResult r = run_cli("kernel-search --k 4 --json");
    CHECK(r.exit_code == 0);
    CHECK(r.out ==
          R"({"pairs":[{"pi_s":"2121","eta_s":""},{"pi_s":"2112112212","eta_s":"21"}]})"
          "\n");
}

TEST_CASE("generation is deterministic and nested") {
    CliResult a = run_cli("generate --construction urt3 --length 2000");
    CliResult b = run_cli("generate --construction urt3 --length 2000");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.size() == 2001);  // trailing newline

    CliResult small = run_cli("generate --construction main-4 --length 100");
    CliResult large = run_cli("generate --construction main-4 --length 300");
    CHECK(large.out.substr(0, 100) == small.out.substr(0, 100));

    CliResult morph = run_cli("generate --morphism f4 --seed 1 --length 9");
    CHECK(morph.out == "121122121\n");

    // generated prefixes scan clean end to end
    std::string word = a.out.substr(0, 2000);
    CliResult scan = run_cli("check --k 3 --threshold 7/4 --strict", word);
    CHECK(scan.exit_code == 0);
}
