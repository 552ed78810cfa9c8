// Scan kernel benchmarks: the OpenMP fast scanner against its serial run
// and against the naive reference.

#include <benchmark/benchmark.h>

#include "urtlab/morphism.hpp"
#include "urtlab/powers.hpp"
#include "urtlab/prover.hpp"

namespace {

urt::Word ternary_prefix(std::size_t n) {
    return urt::fixed_point_prefix(urt::builtin(urt::BuiltinMorphism::f24), 1, n);
}

void BM_scan_fast_parallel(benchmark::State& state) {
    urt::Word w = ternary_prefix(static_cast<std::size_t>(state.range(0)));
    urt::Threshold t = urt::make_threshold(urt::make_rational(7, 4), true);
    for (auto _ : state) {
        auto ws = urt::scan_undirected(w, t);
        benchmark::DoNotOptimize(ws);
    }
    state.SetComplexityN(state.range(0));
}

void BM_scan_fast_serial(benchmark::State& state) {
    urt::Word w = ternary_prefix(static_cast<std::size_t>(state.range(0)));
    urt::Threshold t = urt::make_threshold(urt::make_rational(7, 4), true);
    urt::ScanOptions opts;
    opts.parallel = false;
    for (auto _ : state) {
        auto ws = urt::scan_undirected(w, t, opts);
        benchmark::DoNotOptimize(ws);
    }
    state.SetComplexityN(state.range(0));
}

void BM_scan_naive(benchmark::State& state) {
    urt::Word w = ternary_prefix(static_cast<std::size_t>(state.range(0)));
    urt::Threshold t = urt::make_threshold(urt::make_rational(7, 4), true);
    for (auto _ : state) {
        auto ws = urt::scan_undirected_naive(w, t);
        benchmark::DoNotOptimize(ws);
    }
    state.SetComplexityN(state.range(0));
}

void BM_scan_main_construction(benchmark::State& state) {
    urt::Word w = urt::construct_w(8, static_cast<std::size_t>(state.range(0)));
    urt::Threshold t = urt::make_threshold(urt::make_rational(7, 6), true);
    for (auto _ : state) {
        auto ws = urt::scan_undirected(w, t);
        benchmark::DoNotOptimize(ws);
    }
}

void BM_encode(benchmark::State& state) {
    urt::Word w = urt::construct_w(8, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        auto r = urt::encode(w, 8);
        benchmark::DoNotOptimize(r);
    }
}

}  // namespace

BENCHMARK(BM_scan_fast_parallel)->Arg(1024)->Arg(4096)->Arg(16384)->Complexity();
BENCHMARK(BM_scan_fast_serial)->Arg(1024)->Arg(4096)->Arg(16384)->Complexity();
BENCHMARK(BM_scan_naive)->Arg(256)->Arg(1024)->Complexity();
BENCHMARK(BM_scan_main_construction)->Arg(2048)->Arg(8192);
BENCHMARK(BM_encode)->Arg(65536);

BENCHMARK_MAIN();
