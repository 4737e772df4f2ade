#include <benchmark/benchmark.h>

#include "eistheta/bernoulli.hpp"
#include "eistheta/eisenstein.hpp"

using namespace eistheta;

static void BernoulliTable(benchmark::State& state) {
    for (auto _ : state) {
        auto b = arith::bernoulli(static_cast<unsigned long>(state.range(0)));
        benchmark::DoNotOptimize(b);
    }
}
BENCHMARK(BernoulliTable)->Arg(60)->Arg(240)->Arg(1212)->Arg(2422);

static void EisCoeffDegree3(benchmark::State& state) {
    auto T0 = HalfIntSym::from_two_t(3, {arith::Int(2), arith::Int(0), arith::Int(1), arith::Int(0),
                                         arith::Int(2), arith::Int(0), arith::Int(1), arith::Int(0),
                                         arith::Int(6)});
    long k = state.range(0);
    for (auto _ : state) {
        auto v = eisenstein::eis_coeff(3, k, T0);
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(EisCoeffDegree3)->Arg(12)->Arg(112);

BENCHMARK_MAIN();
