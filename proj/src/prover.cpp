#include "urtlab/prover.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"
#include "urtlab/suffix_automaton.hpp"

namespace urt {

bool Report::all_pass() const {
    for (const Check& c : checks)
        if (!c.pass) return false;
    return true;
}

void Report::add(std::string name, bool pass, std::string details) {
    checks.push_back(Check{std::move(name), pass, std::move(details)});
}

std::string report_json(const Report& r) {
    nlohmann::ordered_json j;
    j["theorem"] = r.theorem;
    j["checks"] = nlohmann::ordered_json::array();
    for (const Check& c : r.checks) {
        nlohmann::ordered_json cj;
        cj["name"] = c.name;
        cj["pass"] = c.pass;
        cj["details"] = c.details;
        j["checks"].push_back(cj);
    }
    return j.dump();
}

std::string report_text(const Report& r) {
    std::ostringstream out;
    out << "report: " << r.theorem << "\n";
    for (const Check& c : r.checks)
        out << "  [" << (c.pass ? "pass" : "FAIL") << "] " << c.name
            << (c.details.empty() ? "" : ": " + c.details) << "\n";
    out << (r.all_pass() ? "all checks passed" : "SOME CHECKS FAILED") << "\n";
    return out.str();
}

// ---------------------------------------------------------------------------
// backtracking

namespace {

class Backtracker {
public:
    Backtracker(int k, const Threshold& t, const BacktrackOptions& opts)
        : k_(k), t_(t), opts_(opts) {
        if (k < 2) throw std::invalid_argument("alphabet size must be >= 2");
        if (opts.pattern_m == 1) throw std::invalid_argument("pattern exponent must be >= 2");
        start_ = std::chrono::steady_clock::now();
    }

    SearchOutcome run() {
        std::string cur;
        if (opts_.symmetry) {
            if (opts_.pattern_m >= 2)
                throw std::invalid_argument("symmetry reduction applies to threshold mode only");
            // Sound only when equal letters at distance <= k-2 are already
            // forbidden; every long enough avoiding word then starts with
            // k-1 distinct letters and can be renamed canonically.
            if (!t_.violated_by(k_ - 2, 1))
                throw std::invalid_argument(
                    "symmetry reduction is unsound for this threshold");
            for (int c = 1; c <= k_ - 1; ++c) cur.push_back(static_cast<char>(c));
        }
        record(cur);
        dfs(cur);
        SearchOutcome out;
        out.max_length = best_;
        out.witnesses = witnesses_;
        out.maximal_word_count = maximal_count_;
        out.nodes_expanded = nodes_;
        return out;
    }

private:
    void record(const std::string& cur) {
        int len = static_cast<int>(cur.size());
        if (len > best_) {
            best_ = len;
            witnesses_.clear();
            maximal_count_ = 0;
        }
        if (len == best_) {
            ++maximal_count_;
            if (witnesses_.size() < opts_.witness_cap) witnesses_.emplace_back(cur, k_);
        }
    }

    void dfs(std::string& cur) {
        ++nodes_;
        if (nodes_ > opts_.max_nodes)
            throw BudgetExceeded("node budget exceeded; the avoiding language may be infinite");
        if (opts_.time_cap_seconds > 0 && (nodes_ & 0xffff) == 0) {
            double elapsed = std::chrono::duration<double>(
                                 std::chrono::steady_clock::now() - start_)
                                 .count();
            if (elapsed > opts_.time_cap_seconds)
                throw BudgetExceeded("time cap exceeded; the avoiding language may be infinite");
        }
        for (int c = 1; c <= k_; ++c) {
            cur.push_back(static_cast<char>(c));
            if (extension_ok(cur)) {
                record(cur);
                dfs(cur);
            }
            cur.pop_back();
        }
    }

    // Checks only repetitions ending at the last position; earlier ones
    // were ruled out when that prefix was extended.
    bool extension_ok(const std::string& cur) const {
        long long n = static_cast<long long>(cur.size());
        if (opts_.pattern_m >= 2) {
            int m = opts_.pattern_m;
            for (long long len = 1; len * m <= n; ++len) {
                long long s = n - len * m;
                bool ok = false;
                for (int j = 1; j < m && !ok; ++j) {
                    bool eq = true, mir = true;
                    for (long long i = 0; i < len && (eq || mir); ++i) {
                        char c = cur[static_cast<std::size_t>(s + j * len + i)];
                        if (c != cur[static_cast<std::size_t>(s + i)]) eq = false;
                        if (c != cur[static_cast<std::size_t>(s + len - 1 - i)]) mir = false;
                    }
                    if (!eq && !mir) ok = true;
                }
                if (!ok) return false;
            }
            return true;
        }
        for (long long p = 1; p < n; ++p) {
            long long emax = std::min(p, n - p);
            for (long long e = t_.min_violating_excess(p); e <= emax; ++e) {
                long long s = n - p - e;
                bool ord = true;
                for (long long i = 0; i < e && ord; ++i)
                    ord = cur[static_cast<std::size_t>(s + p + i)] ==
                          cur[static_cast<std::size_t>(s + i)];
                if (ord) return false;
                bool rev = true;
                for (long long i = 0; i < e && rev; ++i)
                    rev = cur[static_cast<std::size_t>(s + p + i)] ==
                          cur[static_cast<std::size_t>(s + e - 1 - i)];
                if (rev) return false;
            }
        }
        return true;
    }

    int k_;
    Threshold t_;
    BacktrackOptions opts_;
    int best_ = 0;
    std::vector<Word> witnesses_;
    long long maximal_count_ = 0;
    long long nodes_ = 0;
    std::chrono::steady_clock::time_point start_;
};

}  // namespace

SearchOutcome backtrack_max_length(int k, const Threshold& t, const BacktrackOptions& opts) {
    return Backtracker(k, t, opts).run();
}

// ---------------------------------------------------------------------------
// dead-end factors of the length k+3 argument

namespace {

struct LeafSpec {
    int range_from;             // leading run range_from..k-1
    std::vector<int> tail;      // literal tail letters, k encoded as 0
    WitnessKind kind;
    long long exp_num_offset;   // exponent (k+num_offset)/(k+den_offset)
    long long exp_den_offset;
};

Word leaf_word(const LeafSpec& spec, int k) {
    Word w({}, k);
    for (int c = spec.range_from; c <= k - 1; ++c) w.push_back(c);
    for (int c : spec.tail) w.push_back(c == 0 ? k : c);
    return w;
}

}  // namespace

Report check_leaf_factors(int k) {
    if (k < 6) throw std::invalid_argument("the dead-end factor table applies for k >= 6");
    // The eleven non-extendable branches, in tree order. Each word is an
    // undirected power spanning its whole length.
    static const std::vector<LeafSpec> leaves = {
        {1, {1, 2}, WitnessKind::ordinary, 1, -1},
        {2, {1, 0, 2, 3}, WitnessKind::ordinary, 2, 0},
        {3, {1, 0, 2, 4, 3}, WitnessKind::reverse, 2, 0},
        {4, {1, 0, 2, 4, 5}, WitnessKind::ordinary, 1, -1},
        {2, {1, 0, 3, 2}, WitnessKind::reverse, 2, 0},
        {3, {1, 0, 3, 4}, WitnessKind::ordinary, 1, -1},
        {1, {0, 1, 2}, WitnessKind::ordinary, 2, 0},
        {2, {0, 1, 3, 2}, WitnessKind::reverse, 2, 0},
        {3, {0, 1, 3, 4}, WitnessKind::ordinary, 1, -1},
        {1, {0, 2, 1}, WitnessKind::reverse, 2, 0},
        {2, {0, 2, 3}, WitnessKind::ordinary, 1, -1},
    };
    Report report;
    report.theorem = "leaf-factors-k" + std::to_string(k);
    Rational low = make_rational(k - 1, k - 2);
    Rational mid = make_rational(k + 2, k);
    Rational high = make_rational(k + 1, k - 1);
    report.add("exponent-chain", high > mid && mid > low,
               to_string(high) + " > " + to_string(mid) + " > " + to_string(low));
    Threshold t = make_threshold(low, false);
    for (std::size_t idx = 0; idx < leaves.size(); ++idx) {
        const LeafSpec& spec = leaves[idx];
        Word w = leaf_word(spec, k);
        Rational expected =
            make_rational(k + spec.exp_num_offset, k + spec.exp_den_offset);
        int period = static_cast<int>((expected.den * static_cast<long long>(w.size())) /
                                      (expected.num));
        int excess = static_cast<int>(w.size()) - period;
        std::vector<PowerWitness> found = scan_undirected(w, t);
        PowerWitness want{0, period, excess, spec.kind};
        bool ok = std::find(found.begin(), found.end(), want) != found.end() &&
                  want.verify(w) && want.exponent() == expected && expected >= low;
        report.add("leaf-" + std::to_string(idx + 1) + "-" + format_word(w), ok,
                   to_string(spec.kind) + " " + to_string(expected) + "-power");
    }
    return report;
}

// ---------------------------------------------------------------------------
// the ternary 7/4+ construction

Report verify_urt3(std::size_t scan_len) {
    const Morphism& f = builtin(BuiltinMorphism::f24);
    Report report;
    report.theorem = "urt3";

    StableFactorSet s19 = stable_factor_set(f, 1, 19);
    std::set<std::string> level19;
    for (const Word& w : s19.factors)
        if (w.size() == 19) level19.insert(std::string(w.raw()));
    bool no_rev19 = true;
    for (const std::string& x : level19) {
        std::string rev(x.rbegin(), x.rend());
        if (level19.count(rev)) {
            no_rev19 = false;
            break;
        }
    }
    report.add("no-reversible-factor-of-length-19", no_rev19,
               std::to_string(level19.size()) + " factors of length 19, stabilized at iterate " +
                   std::to_string(s19.level));

    Word f3 = fixed_point_prefix(f, 1, 13824);
    int max_rev = max_reversible_factor_length(f3, 19);
    report.add("reversible-length-18-attained", max_rev == 18,
               "max reversible factor length in the third iterate: " + std::to_string(max_rev));

    StableFactorSet s41 = stable_factor_set(f, 1, 41);
    report.add("factors-up-to-41-stabilize-at-iterate-3", s41.level == 3,
               std::to_string(s41.factors.size()) + " factors, level " +
                   std::to_string(s41.level));
    StableFactorSet s62 = stable_factor_set(f, 1, 62);
    report.add("factors-up-to-62-stabilize-at-iterate-3", s62.level == 3,
               std::to_string(s62.factors.size()) + " factors, level " +
                   std::to_string(s62.level));

    Word prefix = fixed_point_prefix(f, 1, scan_len);
    Threshold t = make_threshold(make_rational(7, 4), true);
    std::vector<PowerWitness> witnesses = scan_undirected(prefix, t);
    report.add("prefix-scan-7/4-strict", witnesses.empty(),
               "length " + std::to_string(scan_len) + ", " +
                   std::to_string(witnesses.size()) + " witnesses");
    return report;
}

// ---------------------------------------------------------------------------
// kernel repetitions

namespace {

const Morphism& construction_morphism(int k) {
    switch (k) {
        case 4: return builtin(BuiltinMorphism::f4);
        case 8: return builtin(BuiltinMorphism::f8);
        case 12: return builtin(BuiltinMorphism::f12);
        default: throw std::invalid_argument("construction exists for k in {4, 8, 12}");
    }
}

// exclusive bound from 2|pi| < (k-2)(3|eta|+k+1)
long long pi_length_bound(int k, long long eta_len) {
    return (static_cast<long long>(k - 2) * (3 * eta_len + k + 1) + 1) / 2;
}

std::vector<std::size_t> occurrences(std::string_view hay, std::string_view needle) {
    std::vector<std::size_t> out;
    if (needle.empty()) {
        for (std::size_t i = 0; i <= hay.size(); ++i) out.push_back(i);
        return out;
    }
    std::size_t pos = hay.find(needle);
    while (pos != std::string_view::npos) {
        out.push_back(pos);
        pos = hay.find(needle, pos + 1);
    }
    return out;
}

}  // namespace

KernelSearchResult kernel_search(int k) {
    const Morphism& f = construction_morphism(k);
    int r = f.uniform_length();
    PrefixCode code = blocks_of(f);
    std::array<Permutation, 2> tk = tau(k);

    KernelSearchResult result;
    result.report.theorem = "kernel-search-k" + std::to_string(k);

    long long max_pi = pi_length_bound(k, r - 1) - 1;
    int max_len = static_cast<int>(max_pi + r - 1);
    StabilizedPrefix sp = stabilize_factors(f, 1, max_len);
    std::string_view W = sp.prefix.raw();
    result.report.add("factor-universe",
                      true,
                      "iterate " + std::to_string(sp.level) + " of length " +
                          std::to_string(W.size()) + " carries all factors up to length " +
                          std::to_string(max_len));

    // every factor of length r contains a cut, so cut-free excesses are shorter
    SuffixAutomaton sam(W, f.codomain_size());
    bool all_cut = true;
    {
        std::vector<std::string> length_r;
        sam.enumerate_factors(r, [&](const std::string& x) {
            if (static_cast<int>(x.size()) == r) length_r.push_back(x);
        });
        for (const std::string& x : length_r)
            if (cut_free(Word(x, f.codomain_size()), code)) {
                all_cut = false;
                break;
            }
        result.report.add("every-length-r-factor-has-a-cut", all_cut,
                          std::to_string(length_r.size()) + " factors of length " +
                              std::to_string(r));
    }

    std::vector<std::string> etas{""};
    sam.enumerate_factors(r - 1, [&](const std::string& x) {
        if (cut_free(Word(x, f.codomain_size()), code)) etas.push_back(x);
    });
    result.report.add("cut-free-excess-candidates", true,
                      std::to_string(etas.size()) + " candidates (including the empty one)");

    // prefix products of tau along the scan word: tau of W[a..b) is the
    // identity exactly when the products at a and b coincide
    std::vector<std::uint64_t> pp(W.size() + 1);
    {
        Permutation acc = Permutation::identity(k);
        pp[0] = acc.packed();
        for (std::size_t i = 0; i < W.size(); ++i) {
            acc = compose(acc, tk[static_cast<std::size_t>(W[i] - 1)]);
            pp[i + 1] = acc.packed();
        }
    }

    std::set<std::pair<std::string, std::string>> pairs;
    for (const std::string& eta : etas) {
        long long bound = pi_length_bound(k, static_cast<long long>(eta.size()));
        std::vector<std::size_t> occ = occurrences(W, eta);
        std::unordered_map<std::uint64_t, std::vector<std::size_t>> buckets;
        buckets.reserve(occ.size() * 2);
        for (std::size_t a : occ) buckets[pp[a]].push_back(a);
        long long min_pi = std::max<long long>(1, static_cast<long long>(eta.size()));
        for (auto& [key, positions] : buckets) {
            for (std::size_t i = 0; i < positions.size(); ++i) {
                for (std::size_t j = i + 1; j < positions.size(); ++j) {
                    long long len = static_cast<long long>(positions[j] - positions[i]);
                    if (len >= bound) break;  // positions ascend
                    if (len < min_pi) continue;
                    pairs.emplace(std::string(W.substr(positions[i], static_cast<std::size_t>(len))),
                                  eta);
                }
            }
        }
    }

    for (const auto& [pi, eta] : pairs)
        result.pairs.push_back(KernelPair{Word(pi, 2), Word(eta, 2)});
    std::sort(result.pairs.begin(), result.pairs.end(), [](const KernelPair& a, const KernelPair& b) {
        return std::tuple(a.pi_s.size(), a.pi_s.raw(), a.eta_s.size(), a.eta_s.raw()) <
               std::tuple(b.pi_s.size(), b.pi_s.raw(), b.eta_s.size(), b.eta_s.raw());
    });

    // independent re-check of every reported pair
    bool rechecked = true;
    int eta_prime = static_cast<int>(f.common_prefix().size());
    for (const KernelPair& pair : result.pairs) {
        bool ok = eval_word(std::span<const Permutation>(tk), pair.pi_s).is_identity();
        ok = ok && pair.pi_s.raw().substr(0, pair.eta_s.size()) == pair.eta_s.raw();
        ok = ok && cut_free(pair.eta_s, code);
        ok = ok && W.find(std::string(pair.pi_s.raw()) + std::string(pair.eta_s.raw())) !=
                       std::string_view::npos;
        ok = ok && 2 * static_cast<long long>(pair.pi_s.size()) <
                       static_cast<long long>(k - 2) *
                           (3 * static_cast<long long>(pair.eta_s.size()) + k + 1);
        // the telescoped period bound only shrinks as the level rises
        for (int s = 0; s <= 6 && ok; ++s) {
            auto [pi0, eta0] = telescope_lengths(s, r, eta_prime,
                                                 static_cast<long long>(pair.pi_s.size()),
                                                 static_cast<long long>(pair.eta_s.size()));
            ok = make_rational(3 * eta0 + k + 1, 2 * pi0) <=
                 make_rational(3 * static_cast<long long>(pair.eta_s.size()) + k + 1,
                               2 * static_cast<long long>(pair.pi_s.size()));
        }
        rechecked = rechecked && ok;
    }
    result.report.add("pair-rechecks", rechecked,
                      std::to_string(result.pairs.size()) + " pairs found");
    return result;
}

std::vector<KernelPair> refined_k4_filter(std::span<const KernelPair> pairs) {
    std::vector<KernelPair> kept;
    for (const KernelPair& pair : pairs) {
        auto count = [](const Word& w, Letter c) {
            long long n = 0;
            for (std::size_t i = 0; i < w.size(); ++i)
                if (w[i] == c) ++n;
            return n;
        };
        bool balanced = count(pair.pi_s, 1) == count(pair.pi_s, 2) &&
                        count(pair.eta_s, 1) == count(pair.eta_s, 2);
        if (!balanced) {
            // premise of the sharpened bound fails; keep conservatively
            kept.push_back(pair);
            continue;
        }
        if (static_cast<long long>(pair.pi_s.size()) <
            2 * static_cast<long long>(pair.eta_s.size()) + 4)
            kept.push_back(pair);
    }
    return kept;
}

std::pair<long long, long long> telescope_lengths(int s, int r, int eta_prime_len,
                                                  long long pi_s_len, long long eta_s_len) {
    if (s < 0 || r < 1) throw std::invalid_argument("bad telescope parameters");
    long long power = 1;     // r^s
    long long geom = 0;      // 1 + r + ... + r^(s-1)
    for (int i = 0; i < s; ++i) {
        geom += power;
        power *= r;
        if (power > (1LL << 60)) throw std::overflow_error("telescope length overflow");
    }
    return {power * pi_s_len, power * eta_s_len + eta_prime_len * geom};
}

// ---------------------------------------------------------------------------
// intertwiner

namespace {

// Solve phi . A = B . phi pointwise for the two generator pairs, by
// backtracking over partial images with forward propagation along the
// orbits of <A1, A2>.
bool intertwiner_solve(int k, const std::array<Permutation, 2>& A,
                       const std::array<Permutation, 2>& B, std::vector<int>& phi,
                       std::vector<bool>& used) {
    int point = 0;
    for (int i = 1; i <= k; ++i)
        if (phi[static_cast<std::size_t>(i)] == 0) {
            point = i;
            break;
        }
    if (point == 0) return true;
    for (int v = 1; v <= k; ++v) {
        if (used[static_cast<std::size_t>(v)]) continue;
        std::vector<int> phi2 = phi;
        std::vector<bool> used2 = used;
        std::vector<std::pair<int, int>> work{{point, v}};
        bool ok = true;
        while (ok && !work.empty()) {
            auto [i, w] = work.back();
            work.pop_back();
            if (phi2[static_cast<std::size_t>(i)] == w) continue;
            if (phi2[static_cast<std::size_t>(i)] != 0 || used2[static_cast<std::size_t>(w)]) {
                ok = false;
                break;
            }
            phi2[static_cast<std::size_t>(i)] = w;
            used2[static_cast<std::size_t>(w)] = true;
            for (int j = 0; j < 2; ++j)
                work.emplace_back(A[static_cast<std::size_t>(j)].apply(i),
                                  B[static_cast<std::size_t>(j)].apply(w));
        }
        if (ok && intertwiner_solve(k, A, B, phi2, used2)) {
            phi = std::move(phi2);
            used = std::move(used2);
            return true;
        }
    }
    return false;
}

}  // namespace

Permutation find_intertwiner(int k) {
    const Morphism& f = construction_morphism(k);
    std::array<Permutation, 2> tk = tau(k);
    std::array<Permutation, 2> A{eval_word(std::span<const Permutation>(tk), f.image(1)),
                                 eval_word(std::span<const Permutation>(tk), f.image(2))};
    std::vector<int> phi(static_cast<std::size_t>(k) + 1, 0);
    std::vector<bool> used(static_cast<std::size_t>(k) + 1, false);
    if (!intertwiner_solve(k, A, tk, phi, used))
        throw std::runtime_error("no conjugating permutation exists");
    std::vector<uint8_t> image(static_cast<std::size_t>(k));
    for (int i = 1; i <= k; ++i) image[static_cast<std::size_t>(i - 1)] = static_cast<uint8_t>(phi[static_cast<std::size_t>(i)]);
    Permutation result{std::move(image)};
    Permutation inv = result.inverse();
    for (int j = 0; j < 2; ++j) {
        Permutation lhs = compose(compose(result, A[static_cast<std::size_t>(j)]), inv);
        if (!(lhs == tk[static_cast<std::size_t>(j)]))
            throw std::logic_error("conjugation identity failed verification");
    }
    return result;
}

// ---------------------------------------------------------------------------
// the main constructions

Word construct_w(int k, std::size_t n) {
    const Morphism& f = construction_morphism(k);
    const Morphism& g = builtin(BuiltinMorphism::g);
    if (n < static_cast<std::size_t>(k - 1))
        throw std::invalid_argument("the construction needs length >= k-1");
    std::size_t code_len = n - static_cast<std::size_t>(k - 1);
    FixedPointStream stream(f, 1);
    std::size_t m = code_len / 2 + 2;
    Word code = apply(g, stream.prefix(m));
    while (code.size() < code_len) {
        m *= 2;
        code = apply(g, stream.prefix(m));
    }
    code = code.prefix(code_len);
    Word u({}, k);
    for (int c = 1; c <= k - 1; ++c) u.push_back(c);
    return decode(u, code, k);
}

Report verify_main(int k, std::size_t n, const VerifyMainOptions& opts) {
    Report report;
    report.theorem = "main-k" + std::to_string(k);
    Word w = construct_w(k, n);
    Threshold t = make_threshold(make_rational(k - 1, k - 2), true);

    // no rainbow window reappears reversed
    bool mirror_free = true;
    {
        std::unordered_set<std::string> windows;
        std::size_t len = static_cast<std::size_t>(k - 1);
        std::string_view raw = w.raw();
        for (std::size_t i = 0; i + len <= raw.size(); ++i) {
            std::string_view win = raw.substr(i, len);
            bool rainbow = true;
            unsigned seen = 0;
            for (char c : win) {
                unsigned bit = 1u << static_cast<unsigned char>(c);
                if (seen & bit) {
                    rainbow = false;
                    break;
                }
                seen |= bit;
            }
            if (rainbow) windows.insert(std::string(win));
        }
        for (const std::string& win : windows) {
            std::string rev(win.rbegin(), win.rend());
            if (windows.count(rev)) {
                mirror_free = false;
                break;
            }
        }
        report.add("no-mirrored-rainbow-window", mirror_free,
                   std::to_string(windows.size()) + " distinct rainbow windows of length " +
                       std::to_string(k - 1));
    }

    ScanOptions scan_opts;
    scan_opts.reverse_excess_cap = (mirror_free && !opts.full_reverse_scan) ? k - 1 : 0;
    std::vector<PowerWitness> witnesses = scan_undirected(w, t, scan_opts);
    report.add("scan-" + to_string(t.alpha) + "-strict", witnesses.empty(),
               "length " + std::to_string(n) + ", " + std::to_string(witnesses.size()) +
                   " witnesses" +
                   (scan_opts.reverse_excess_cap ? ", reverse excess capped at k-1" : ""));

    // short-span finite checks, re-run independently with the naive scanner
    {
        ScanOptions naive_opts;
        naive_opts.max_span = (k - 1) * (k - 1) - 1;
        std::vector<PowerWitness> short_span = scan_undirected_naive(w, t, naive_opts);
        long long ord = 0, rev = 0;
        for (const PowerWitness& pw : short_span)
            (pw.kind == WitnessKind::ordinary ? ord : rev) += 1;
        report.add("short-span-ordinary-check", ord == 0,
                   "spans below " + std::to_string((k - 1) * (k - 1)));
        report.add("short-span-reverse-check", rev == 0,
                   "spans below " + std::to_string((k - 1) * (k - 1)));
    }
    return report;
}

}  // namespace urt
