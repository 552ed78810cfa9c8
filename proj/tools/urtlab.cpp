// urtlab -- check words for undirected fractional powers, generate the
// avoidance constructions, run the ternary ranking encoding, and execute
// the finite verification suites.

#include <cstdlib>
#include <iostream>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "urtlab/morphism.hpp"
#include "urtlab/pansiot.hpp"
#include "urtlab/powers.hpp"
#include "urtlab/prover.hpp"
#include "urtlab/rational.hpp"
#include "urtlab/word.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

urt::Threshold threshold_from(const std::string& text, bool strict) {
    if (text.find('.') != std::string::npos)
        throw std::invalid_argument("thresholds are exact fractions P/Q; decimals are rejected");
    return urt::make_threshold(urt::parse_rational(text), strict);
}

std::string read_input(const std::string& inline_word, const std::string& path) {
    if (!inline_word.empty()) return inline_word;
    std::ostringstream buf;
    if (!path.empty()) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open input file '" + path + "'");
        buf << in.rdbuf();
    } else {
        buf << std::cin.rdbuf();
    }
    std::string text = buf.str();
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r' || text.back() == ' '))
        text.pop_back();
    std::size_t start = text.find_first_not_of(" \t\r\n");
    return start == std::string::npos ? std::string{} : text.substr(start);
}

const urt::Morphism& morphism_for_construction(const std::string& name, int& k_out,
                                               urt::Letter& seed_out) {
    seed_out = 1;
    if (name == "urt3") {
        k_out = 3;
        return urt::builtin(urt::BuiltinMorphism::f24);
    }
    if (name == "main-4") k_out = 4;
    else if (name == "main-8") k_out = 8;
    else if (name == "main-12") k_out = 12;
    else throw std::runtime_error("unknown construction '" + name + "'");
    switch (k_out) {
        case 4: return urt::builtin(urt::BuiltinMorphism::f4);
        case 8: return urt::builtin(urt::BuiltinMorphism::f8);
        default: return urt::builtin(urt::BuiltinMorphism::f12);
    }
}

// Constant-memory generation: a logarithmic-depth cursor walks the fixed
// point; the decoding state is just the rank vector.
void stream_construction(const std::string& name, std::size_t length, std::ostream& out) {
    int k = 0;
    urt::Letter seed = 1;
    const urt::Morphism& h = morphism_for_construction(name, k, seed);
    constexpr std::size_t kFlush = 1 << 16;
    std::string buffer;
    buffer.reserve(kFlush + 8);
    auto emit = [&](urt::Letter c) {
        buffer.push_back(static_cast<char>('0' + c));
        if (buffer.size() >= kFlush) {
            out << buffer;
            buffer.clear();
        }
    };
    if (name == "urt3") {
        urt::FixedPointCursor cursor(h, seed);
        for (std::size_t i = 0; i < length; ++i) emit(cursor.next());
    } else {
        std::vector<urt::Letter> ranks(static_cast<std::size_t>(k));
        std::size_t produced = 0;
        for (int c = 1; c <= k - 1 && produced < length; ++c, ++produced) emit(c);
        // ranks after the canonical rainbow prefix: k is oldest, then 1..k-1
        ranks[0] = k;
        for (int c = 1; c <= k - 1; ++c) ranks[static_cast<std::size_t>(c)] = c;
        urt::FixedPointCursor cursor(h, seed);
        const urt::Morphism& g = urt::builtin(urt::BuiltinMorphism::g);
        while (produced < length) {
            const urt::Word& image = g.image(cursor.next());
            for (std::size_t i = 0; i < image.size() && produced < length; ++i, ++produced) {
                int t = image[i];
                urt::Letter c = ranks[static_cast<std::size_t>(t - 1)];
                emit(c);
                ranks.erase(ranks.begin() + (t - 1));
                ranks.push_back(c);
            }
        }
    }
    out << buffer << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"undirected repetition toolkit"};
    app.require_subcommand(1);

    int jobs = 0;
    if (const char* env = std::getenv("URTLAB_JOBS")) jobs = std::atoi(env);
    app.add_option("--jobs", jobs, "worker threads (default: URTLAB_JOBS or all cores)");

    // check ------------------------------------------------------------
    auto* check = app.add_subcommand("check", "scan a word for undirected powers");
    int check_k = 0;
    std::string check_threshold;
    bool check_strict = false;
    std::string check_word, check_file;
    bool check_json = false, check_exhaustive = false, check_ordinary = false;
    check->add_option("--k", check_k, "alphabet size")->required();
    check->add_option("--threshold", check_threshold, "threshold P/Q")->required();
    check->add_flag("--strict", check_strict, "forbid exponents strictly above the threshold");
    check->add_option("--word", check_word, "word inline (text format)");
    check->add_option("--input", check_file, "word file (default: stdin)");
    check->add_flag("--json", check_json, "emit witnesses as JSON");
    check->add_flag("--exhaustive", check_exhaustive, "report every violating triple");
    check->add_flag("--ordinary-only", check_ordinary, "ignore reverse repetitions");

    // generate ----------------------------------------------------------
    auto* generate = app.add_subcommand("generate", "emit a construction or morphic prefix");
    std::string gen_construction, gen_morphism, gen_morphism_file;
    int gen_seed = 1;
    std::size_t gen_length = 0;
    generate->add_option("--construction", gen_construction, "urt3 | main-4 | main-8 | main-12");
    generate->add_option("--morphism", gen_morphism, "builtin morphism f24|f4|f8|f12|g");
    generate->add_option("--morphism-file", gen_morphism_file, "morphism file (letter -> image)");
    generate->add_option("--seed", gen_seed, "fixed point seed letter")->capture_default_str();
    generate->add_option("--length", gen_length, "prefix length")->required();

    // encode / decode ----------------------------------------------------
    auto* enc = app.add_subcommand("encode", "ternary ranking encoding of a word");
    int enc_k = 0;
    std::string enc_word, enc_file;
    bool enc_json = false;
    enc->add_option("--k", enc_k, "alphabet size")->required();
    enc->add_option("--word", enc_word, "word inline");
    enc->add_option("--input", enc_file, "word file (default: stdin)");
    enc->add_flag("--json", enc_json, "emit JSON");

    auto* dec = app.add_subcommand("decode", "rebuild a word from prefix and code");
    int dec_k = 0;
    std::string dec_prefix, dec_code;
    bool dec_check = false;
    dec->add_option("--k", dec_k, "alphabet size")->required();
    dec->add_option("--prefix", dec_prefix, "shortest rainbow prefix")->required();
    dec->add_option("--code", dec_code, "ternary code")->required();
    dec->add_flag("--check", dec_check, "validate the window properties of the output");

    // prove-lower-bound ----------------------------------------------------
    auto* lower = app.add_subcommand("prove-lower-bound",
                                     "exhaustive maximum length of avoiding words");
    int lb_k = 0, lb_pattern = 0;
    std::string lb_threshold;
    bool lb_strict = false, lb_symmetry = false, lb_json = false;
    long long lb_max_nodes = 200'000'000;
    double lb_time_cap = 0;
    lower->add_option("--k", lb_k, "alphabet size")->required();
    lower->add_option("--threshold", lb_threshold, "threshold P/Q");
    lower->add_flag("--strict", lb_strict, "threshold is strict");
    lower->add_option("--pattern-m", lb_pattern, "avoid the mirrored power X^m instead");
    lower->add_flag("--symmetry", lb_symmetry, "canonical-prefix reduction");
    lower->add_option("--max-nodes", lb_max_nodes, "node budget")->capture_default_str();
    lower->add_option("--time-cap", lb_time_cap, "wall clock cap in seconds (0 = off)");
    lower->add_flag("--json", lb_json, "emit JSON");

    // verify ----------------------------------------------------------------
    auto* verify = app.add_subcommand("verify", "run a finite verification suite");
    std::string verify_theorem;
    std::size_t verify_length = 3000;
    bool verify_json = false, verify_full_scan = false;
    verify->add_option("--theorem", verify_theorem, "urt3 | main-4 | main-8 | main-12")
        ->required();
    verify->add_option("--length", verify_length, "prefix length to scan")->capture_default_str();
    verify->add_flag("--full-scan", verify_full_scan, "disable the reverse excess cap");
    verify->add_flag("--json", verify_json, "emit JSON");

    // kernel-search ----------------------------------------------------------
    auto* kernel = app.add_subcommand("kernel-search",
                                      "enumerate kernel repetition pairs for k in {4,8,12}");
    int kernel_k = 0;
    bool kernel_json = false;
    kernel->add_option("--k", kernel_k, "alphabet size (4, 8 or 12)")->required();
    kernel->add_flag("--json", kernel_json, "emit JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

#ifdef _OPENMP
    if (jobs > 0) omp_set_num_threads(jobs);
#endif

    try {
        if (check->parsed()) {
            urt::Threshold t = threshold_from(check_threshold, check_strict);
            urt::Word w = urt::parse_word(read_input(check_word, check_file), check_k);
            urt::ScanOptions opts;
            opts.exhaustive = check_exhaustive;
            std::vector<urt::PowerWitness> ws = check_ordinary
                                                    ? urt::scan_ordinary(w, t, opts)
                                                    : urt::scan_undirected(w, t, opts);
            if (check_json) {
                std::cout << urt::witnesses_json(ws) << "\n";
            } else {
                for (const urt::PowerWitness& pw : ws)
                    std::cout << "start=" << pw.start << " period=" << pw.period
                              << " excess=" << pw.excess << " kind=" << urt::to_string(pw.kind)
                              << " exponent=" << urt::to_string(pw.exponent()) << "\n";
                std::cout << (ws.empty() ? "free" : "violations: " + std::to_string(ws.size()))
                          << " (threshold " << urt::to_string(t) << ")\n";
            }
            return ws.empty() ? kExitPass : kExitViolation;
        }

        if (generate->parsed()) {
            if (!gen_construction.empty()) {
                stream_construction(gen_construction, gen_length, std::cout);
                return kExitPass;
            }
            const urt::Morphism* h = nullptr;
            urt::Morphism file_morphism({urt::Word({1}, 1)}, 1);
            if (!gen_morphism.empty()) {
                h = &urt::builtin_by_name(gen_morphism);
            } else if (!gen_morphism_file.empty()) {
                file_morphism = urt::parse_morphism_file(gen_morphism_file);
                h = &file_morphism;
            } else {
                throw std::runtime_error(
                    "generate needs --construction, --morphism or --morphism-file");
            }
            urt::FixedPointStream stream(*h, gen_seed);
            constexpr std::size_t kChunk = 1 << 16;
            for (std::size_t done = 0; done < gen_length;) {
                std::size_t next = std::min(gen_length, done + kChunk);
                urt::Word w = stream.prefix(next);
                std::cout << urt::format_word(w.subword(done, next - done));
                done = next;
            }
            std::cout << "\n";
            return kExitPass;
        }

        if (enc->parsed()) {
            urt::Word w = urt::parse_word(read_input(enc_word, enc_file), enc_k);
            urt::EncodingResult r = urt::encode(w, enc_k);
            if (enc_json) {
                std::cout << urt::encoding_json(r) << "\n";
            } else {
                std::cout << "prefix " << urt::format_word(r.prefix_u) << "\n"
                          << "code " << urt::format_word(r.code) << "\n";
            }
            return kExitPass;
        }

        if (dec->parsed()) {
            urt::Word u = urt::parse_word(dec_prefix, dec_k);
            urt::Word code = urt::parse_word(dec_code, 3);
            std::cout << urt::format_word(urt::decode(u, code, dec_k, dec_check)) << "\n";
            return kExitPass;
        }

        if (lower->parsed()) {
            urt::BacktrackOptions opts;
            opts.symmetry = lb_symmetry;
            opts.max_nodes = lb_max_nodes;
            opts.time_cap_seconds = lb_time_cap;
            opts.pattern_m = lb_pattern;
            urt::Threshold t = lb_pattern >= 2
                                   ? urt::make_threshold(urt::make_rational(2, 1), false)
                                   : threshold_from(lb_threshold, lb_strict);
            if (lb_pattern < 2 && lb_threshold.empty())
                throw std::runtime_error("prove-lower-bound needs --threshold or --pattern-m");
            urt::SearchOutcome outcome = urt::backtrack_max_length(lb_k, t, opts);
            if (lb_json) {
                std::string wits = "[";
                for (std::size_t i = 0; i < outcome.witnesses.size(); ++i) {
                    if (i) wits += ",";
                    wits += "\"" + urt::format_word(outcome.witnesses[i]) + "\"";
                }
                wits += "]";
                std::cout << "{\"max_length\":" << outcome.max_length
                          << ",\"maximal_words\":" << outcome.maximal_word_count
                          << ",\"nodes\":" << outcome.nodes_expanded << ",\"witnesses\":" << wits
                          << "}\n";
            } else {
                std::cout << "max length " << outcome.max_length << " ("
                          << outcome.maximal_word_count << " maximal words, "
                          << outcome.nodes_expanded << " nodes)\n";
                for (const urt::Word& w : outcome.witnesses)
                    std::cout << "  " << urt::format_word(w) << "\n";
            }
            return kExitPass;
        }

        if (verify->parsed()) {
            urt::Report report;
            if (verify_theorem == "urt3") {
                report = urt::verify_urt3(verify_length);
            } else if (verify_theorem == "main-4" || verify_theorem == "main-8" ||
                       verify_theorem == "main-12") {
                int k = std::atoi(verify_theorem.c_str() + 5);
                urt::VerifyMainOptions opts;
                opts.full_reverse_scan = verify_full_scan;
                report = urt::verify_main(k, verify_length, opts);
            } else {
                throw std::runtime_error("unknown theorem '" + verify_theorem + "'");
            }
            std::cout << (verify_json ? urt::report_json(report) + "\n"
                                      : urt::report_text(report));
            return report.all_pass() ? kExitPass : kExitViolation;
        }

        if (kernel->parsed()) {
            urt::KernelSearchResult result = urt::kernel_search(kernel_k);
            if (kernel_json) {
                std::string out = "{\"pairs\":[";
                for (std::size_t i = 0; i < result.pairs.size(); ++i) {
                    if (i) out += ",";
                    out += "{\"pi_s\":\"" + urt::format_word(result.pairs[i].pi_s) +
                           "\",\"eta_s\":\"" + urt::format_word(result.pairs[i].eta_s) + "\"}";
                }
                out += "]}";
                std::cout << out << "\n";
            } else {
                std::cout << urt::report_text(result.report);
                for (const urt::KernelPair& pair : result.pairs)
                    std::cout << "  pair: pi_s=" << urt::format_word(pair.pi_s) << " eta_s="
                              << (pair.eta_s.empty() ? "(empty)" : urt::format_word(pair.eta_s))
                              << "\n";
            }
            return result.report.all_pass() ? kExitPass : kExitViolation;
        }
    } catch (const urt::BudgetExceeded& e) {
        std::cerr << "budget exhausted: " << e.what() << "\n";
        return kExitBudget;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
