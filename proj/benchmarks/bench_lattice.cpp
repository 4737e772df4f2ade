#include <benchmark/benchmark.h>

#include "eistheta/genus.hpp"
#include "eistheta/lattice.hpp"

using namespace eistheta;

static void RepCountT0(benchmark::State& state) {
    auto reps = global_forms::p11_representatives();
    auto T0 = HalfIntSym::from_two_t(3, {arith::Int(2), arith::Int(0), arith::Int(1), arith::Int(0),
                                         arith::Int(2), arith::Int(0), arith::Int(1), arith::Int(0),
                                         arith::Int(6)});
    for (auto _ : state) {
        auto c = global_forms::rep_count(reps[0].gram, T0, static_cast<int>(state.range(0)));
        benchmark::DoNotOptimize(c);
    }
}
BENCHMARK(RepCountT0)->Arg(1)->Arg(2)->Arg(4);

static void AutCount(benchmark::State& state) {
    auto reps = global_forms::p11_representatives();
    for (auto _ : state) {
        auto c = global_forms::aut_count(reps[static_cast<size_t>(state.range(0))].gram);
        benchmark::DoNotOptimize(c);
    }
}
BENCHMARK(AutCount)->Arg(0)->Arg(1)->Arg(2);

static void GenusThetaSweepKey(benchmark::State& state) {
    auto reps = global_forms::p11_representatives();
    auto keys = global_forms::enumerate_keys(3, 2, true);
    for (auto _ : state) {
        arith::Rat acc(0);
        for (const auto& T : keys) acc += global_forms::genus_theta_coeff(reps, T);
        benchmark::DoNotOptimize(acc);
    }
}
BENCHMARK(GenusThetaSweepKey);
