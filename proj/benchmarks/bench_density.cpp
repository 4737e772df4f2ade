#include <benchmark/benchmark.h>

#include "eistheta/density.hpp"
#include "eistheta/siegel_series.hpp"

using namespace eistheta;

static void AlphaCountingEngine(benchmark::State& state) {
    auto S = hyperbolic(2);
    auto T = HalfIntSym::diag({1, 1, 3});
    long q = state.range(0);
    for (auto _ : state) {
        auto r = local_forms::alpha(S, T, q);
        benchmark::DoNotOptimize(r.raw_count);
    }
}
BENCHMARK(AlphaCountingEngine)->Arg(2)->Arg(3)->Arg(5);

static void AlphaPrimitiveDecomposition(benchmark::State& state) {
    auto S = hyperbolic(2);
    auto T = HalfIntSym::diag({1, 1, 3});
    long q = state.range(0);
    for (auto _ : state) {
        auto v = local_forms::alpha_via_beta(S, T, q);
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(AlphaPrimitiveDecomposition)->Arg(3)->Arg(5)->Arg(101);

static void FqInterpolation(benchmark::State& state) {
    auto T = HalfIntSym::diag({1, 1, 3});
    long q = state.range(0);
    for (auto _ : state) {
        auto F = local_forms::fq_interpolate(T, q);
        benchmark::DoNotOptimize(F.coeffs);
    }
}
BENCHMARK(FqInterpolation)->Arg(2)->Arg(3)->Arg(101);
