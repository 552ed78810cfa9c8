#include "urtlab/powers.hpp"

#include <algorithm>
#include <stdexcept>

#include "json.hpp"

namespace urt {

std::string to_string(WitnessKind kind) {
    switch (kind) {
        case WitnessKind::ordinary: return "ordinary";
        case WitnessKind::reverse: return "reverse";
        case WitnessKind::both: return "both";
    }
    return "?";
}

bool PowerWitness::verify(const Word& w) const {
    if (excess < 1 || excess > period) return false;
    std::size_t s = static_cast<std::size_t>(start);
    std::size_t p = static_cast<std::size_t>(period);
    std::size_t e = static_cast<std::size_t>(excess);
    if (start < 0 || s + p + e > w.size()) return false;
    std::string_view raw = w.raw();
    bool ord = true;
    for (std::size_t i = 0; i < e && ord; ++i) ord = raw[s + p + i] == raw[s + i];
    bool rev = true;
    for (std::size_t i = 0; i < e && rev; ++i) rev = raw[s + p + i] == raw[s + e - 1 - i];
    switch (kind) {
        case WitnessKind::ordinary: return ord;
        case WitnessKind::reverse: return rev;
        case WitnessKind::both: return ord && rev;
    }
    return false;
}

std::string witness_json(const PowerWitness& w) {
    nlohmann::ordered_json j;
    j["start"] = w.start;
    j["period"] = w.period;
    j["excess"] = w.excess;
    j["kind"] = to_string(w.kind);
    j["exponent"] = to_string(w.exponent());
    return j.dump();
}

std::string witnesses_json(const std::vector<PowerWitness>& ws) {
    std::string out = "[";
    for (std::size_t i = 0; i < ws.size(); ++i) {
        if (i) out += ",";
        out += witness_json(ws[i]);
    }
    out += "]";
    return out;
}

int minimal_period(const Word& w) {
    if (w.empty()) throw std::invalid_argument("minimal period of the empty word");
    std::string_view s = w.raw();
    std::size_t n = s.size();
    // Longest proper border via the KMP failure function; the minimal
    // period is n minus that border.
    std::vector<int> border(n + 1, 0);
    border[0] = -1;
    int b = -1;
    for (std::size_t i = 0; i < n; ++i) {
        while (b >= 0 && s[static_cast<std::size_t>(b)] != s[i]) b = border[static_cast<std::size_t>(b)];
        ++b;
        border[i + 1] = b;
    }
    return static_cast<int>(n) - border[n];
}

ExponentReport exponent(const Word& w) {
    int q = minimal_period(w);
    return ExponentReport{static_cast<int>(w.size()), q,
                          make_rational(static_cast<long long>(w.size()), q)};
}

namespace {

void z_array(std::string_view s, std::vector<int>& z) {
    int n = static_cast<int>(s.size());
    z.assign(static_cast<std::size_t>(n), 0);
    if (n == 0) return;
    z[0] = n;
    int l = 0, r = 0;
    for (int i = 1; i < n; ++i) {
        if (i < r) z[static_cast<std::size_t>(i)] = std::min(r - i, z[static_cast<std::size_t>(i - l)]);
        while (i + z[static_cast<std::size_t>(i)] < n &&
               s[static_cast<std::size_t>(z[static_cast<std::size_t>(i)])] ==
                   s[static_cast<std::size_t>(i + z[static_cast<std::size_t>(i)])])
            ++z[static_cast<std::size_t>(i)];
        if (i + z[static_cast<std::size_t>(i)] > r) {
            l = i;
            r = i + z[static_cast<std::size_t>(i)];
        }
    }
}

void sort_and_collapse(std::vector<PowerWitness>& out, bool collapse_both) {
    std::sort(out.begin(), out.end());
    if (!collapse_both) return;
    // Identical (start, period, excess) found by both the ordinary and the
    // reverse pass means x matched its own reversal: a palindrome, tagged
    // WitnessKind::both and reported once.
    std::vector<PowerWitness> merged;
    merged.reserve(out.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (i + 1 < out.size() && out[i].kind == WitnessKind::ordinary &&
            out[i + 1].kind == WitnessKind::reverse && out[i].start == out[i + 1].start &&
            out[i].period == out[i + 1].period && out[i].excess == out[i + 1].excess) {
            merged.push_back({out[i].start, out[i].period, out[i].excess, WitnessKind::both});
            ++i;
        } else {
            merged.push_back(out[i]);
        }
    }
    out = std::move(merged);
}

// Ordinary pass: for a fixed period d, a backward sweep yields the longest
// common extension of positions s and s+d in O(1) amortized. The largest
// valid excess at (s, d) is min(lce, d).
void scan_ordinary_impl(std::string_view raw, const Threshold& t, const ScanOptions& opts,
                        std::vector<PowerWitness>& result) {
    long long n = static_cast<long long>(raw.size());
    if (n < 2) return;
#pragma omp parallel if (opts.parallel)
    {
        std::vector<PowerWitness> local;
#pragma omp for schedule(dynamic, 16) nowait
        for (long long d = 1; d < n; ++d) {
            long long ext = 0;
            for (long long s = n - d - 1; s >= 0; --s) {
                ext = raw[static_cast<std::size_t>(s)] == raw[static_cast<std::size_t>(s + d)]
                          ? ext + 1
                          : 0;
                long long e = std::min(ext, d);
                if (e < 1) continue;
                if (opts.exhaustive) {
                    long long lo = t.min_violating_excess(d);
                    long long hi = e;
                    if (opts.max_span > 0) hi = std::min(hi, opts.max_span - d);
                    for (long long e2 = lo; e2 <= hi; ++e2)
                        local.push_back({static_cast<int>(s), static_cast<int>(d),
                                         static_cast<int>(e2), WitnessKind::ordinary});
                } else if (t.violated_by(d, e)) {
                    local.push_back({static_cast<int>(s), static_cast<int>(d),
                                     static_cast<int>(e), WitnessKind::ordinary});
                }
            }
        }
#pragma omp critical
        result.insert(result.end(), local.begin(), local.end());
    }
}

// Reverse pass. A reverse repetition with excess e at (s, p) means the
// factor x ending at c = s+e-1 reappears reversed at b = s+p, i.e. the
// palindromic extension pal(b, c) (longest L with w[b+i] == w[c-i])
// reaches e. For fixed b all pal(b, c) come from one Z-array match of
// w[b..] against the reversed word.
void scan_reverse_impl(std::string_view raw, const Threshold& t, const ScanOptions& opts,
                       std::vector<PowerWitness>& result) {
    long long n = static_cast<long long>(raw.size());
    if (n < 2) return;
    std::string rev(raw.rbegin(), raw.rend());
#pragma omp parallel if (opts.parallel)
    {
        std::vector<PowerWitness> local;
        std::vector<int> z;
        std::vector<int> pal;
        std::string combined;
        // max-heap over alive c values, keyed by c; second = expiry A(c)
        std::vector<std::pair<long long, long long>> heap;
#pragma omp for schedule(dynamic, 16) nowait
        for (long long b = 1; b < n; ++b) {
            combined.clear();
            combined.append(raw.substr(static_cast<std::size_t>(b)));
            combined.push_back('\0');
            combined.append(rev);
            z_array(combined, z);
            pal.assign(static_cast<std::size_t>(b), 0);
            std::size_t base = static_cast<std::size_t>(n - b) + 1;
            for (long long c = 0; c < b; ++c)
                pal[static_cast<std::size_t>(c)] = z[base + static_cast<std::size_t>(n - 1 - c)];

            if (opts.exhaustive) {
                for (long long c = 0; c < b; ++c) {
                    long long ext = pal[static_cast<std::size_t>(c)];
                    long long gap = b - c - 1;
                    for (long long e = 1; e <= ext; ++e) {
                        long long p = gap + e;
                        if (opts.reverse_excess_cap > 0 && e > opts.reverse_excess_cap) break;
                        if (opts.max_span > 0 && p + e > opts.max_span) break;
                        if (t.violated_by(p, e))
                            local.push_back({static_cast<int>(c - e + 1), static_cast<int>(p),
                                             static_cast<int>(e), WitnessKind::reverse});
                    }
                }
            } else if (opts.reverse_excess_cap > 0) {
                long long cap = opts.reverse_excess_cap;
                for (long long s = b - 1; s >= 0; --s) {
                    long long p = b - s;
                    long long emax = std::min({cap, p, n - b});
                    if (emax < 1 || t.min_violating_excess(p) > emax) continue;
                    for (long long e = emax; e >= 1; --e) {
                        if (pal[static_cast<std::size_t>(s + e - 1)] >= e) {
                            if (t.violated_by(p, e))
                                local.push_back({static_cast<int>(s), static_cast<int>(p),
                                                 static_cast<int>(e), WitnessKind::reverse});
                            break;
                        }
                    }
                }
            } else {
                // c is alive at s while A(c) = c+1-pal(b,c) <= s <= c; the
                // largest alive c gives the largest valid excess for (s, b).
                heap.clear();
                auto cmp = [](auto& a, auto& b2) { return a.first < b2.first; };
                for (long long s = b - 1; s >= 0; --s) {
                    if (pal[static_cast<std::size_t>(s)] >= 1) {
                        heap.emplace_back(s, s + 1 - pal[static_cast<std::size_t>(s)]);
                        std::push_heap(heap.begin(), heap.end(), cmp);
                    }
                    while (!heap.empty() && heap.front().second > s) {
                        std::pop_heap(heap.begin(), heap.end(), cmp);
                        heap.pop_back();
                    }
                    if (heap.empty()) continue;
                    long long c = heap.front().first;
                    long long e = c - s + 1;
                    long long p = b - s;
                    if (t.violated_by(p, e))
                        local.push_back({static_cast<int>(s), static_cast<int>(p),
                                         static_cast<int>(e), WitnessKind::reverse});
                }
            }
        }
#pragma omp critical
        result.insert(result.end(), local.begin(), local.end());
    }
}

void check_scan_options(const ScanOptions& opts) {
    if (opts.max_span > 0 && !opts.exhaustive)
        throw std::invalid_argument("max_span requires the exhaustive or naive scanner");
}

}  // namespace

std::vector<PowerWitness> scan_undirected(const Word& w, const Threshold& t,
                                          const ScanOptions& opts) {
    check_scan_options(opts);
    std::vector<PowerWitness> out;
    scan_ordinary_impl(w.raw(), t, opts, out);
    scan_reverse_impl(w.raw(), t, opts, out);
    sort_and_collapse(out, true);
    return out;
}

std::vector<PowerWitness> scan_ordinary(const Word& w, const Threshold& t,
                                        const ScanOptions& opts) {
    check_scan_options(opts);
    std::vector<PowerWitness> out;
    scan_ordinary_impl(w.raw(), t, opts, out);
    sort_and_collapse(out, false);
    return out;
}

namespace {

std::vector<PowerWitness> scan_naive_impl(const Word& w, const Threshold& t,
                                          const ScanOptions& opts, bool with_reverse) {
    std::string_view raw = w.raw();
    long long n = static_cast<long long>(raw.size());
    std::vector<PowerWitness> out;
    for (long long s = 0; s + 2 <= n; ++s) {
        for (long long p = 1; s + p + 1 <= n; ++p) {
            long long best_ord = 0, best_rev = 0;
            long long emax = std::min(p, n - s - p);
            if (opts.max_span > 0) emax = std::min(emax, opts.max_span - p);
            for (long long e = 1; e <= emax; ++e) {
                bool ord = true;
                for (long long i = 0; i < e && ord; ++i)
                    ord = raw[static_cast<std::size_t>(s + p + i)] ==
                          raw[static_cast<std::size_t>(s + i)];
                bool rev = false;
                if (with_reverse && (opts.reverse_excess_cap == 0 || e <= opts.reverse_excess_cap)) {
                    rev = true;
                    for (long long i = 0; i < e && rev; ++i)
                        rev = raw[static_cast<std::size_t>(s + p + i)] ==
                              raw[static_cast<std::size_t>(s + e - 1 - i)];
                }
                if (opts.exhaustive) {
                    if ((ord || rev) && t.violated_by(p, e)) {
                        WitnessKind kind = ord && rev ? WitnessKind::both
                                          : ord       ? WitnessKind::ordinary
                                                      : WitnessKind::reverse;
                        if (!with_reverse) kind = WitnessKind::ordinary;
                        out.push_back({static_cast<int>(s), static_cast<int>(p),
                                       static_cast<int>(e), kind});
                    }
                } else {
                    if (ord) best_ord = e;
                    if (rev) best_rev = e;
                }
            }
            if (opts.exhaustive) continue;
            if (best_ord >= 1 && best_ord == best_rev) {
                if (t.violated_by(p, best_ord))
                    out.push_back({static_cast<int>(s), static_cast<int>(p),
                                   static_cast<int>(best_ord),
                                   with_reverse ? WitnessKind::both : WitnessKind::ordinary});
            } else {
                if (best_ord >= 1 && t.violated_by(p, best_ord))
                    out.push_back({static_cast<int>(s), static_cast<int>(p),
                                   static_cast<int>(best_ord), WitnessKind::ordinary});
                if (best_rev >= 1 && t.violated_by(p, best_rev))
                    out.push_back({static_cast<int>(s), static_cast<int>(p),
                                   static_cast<int>(best_rev), WitnessKind::reverse});
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::vector<PowerWitness> scan_undirected_naive(const Word& w, const Threshold& t,
                                                const ScanOptions& opts) {
    return scan_naive_impl(w, t, opts, true);
}

std::vector<PowerWitness> scan_ordinary_naive(const Word& w, const Threshold& t,
                                              const ScanOptions& opts) {
    return scan_naive_impl(w, t, opts, false);
}

bool is_undirected_free(const Word& w, const Threshold& t) {
    return scan_undirected(w, t).empty();
}

bool contains_unary_pattern(const Word& w, int m) {
    if (m < 2) throw std::invalid_argument("pattern exponent must be >= 2");
    std::string_view raw = w.raw();
    long long n = static_cast<long long>(raw.size());
    std::string rev;
    for (long long len = 1; len * m <= n; ++len) {
        for (long long s = 0; s + len * m <= n; ++s) {
            std::string_view first = raw.substr(static_cast<std::size_t>(s),
                                                static_cast<std::size_t>(len));
            rev.assign(first.rbegin(), first.rend());
            bool ok = true;
            for (int j = 1; j < m && ok; ++j) {
                std::string_view block = raw.substr(static_cast<std::size_t>(s + j * len),
                                                    static_cast<std::size_t>(len));
                ok = block == first || block == rev;
            }
            if (ok) return true;
        }
    }
    return false;
}

}  // namespace urt
