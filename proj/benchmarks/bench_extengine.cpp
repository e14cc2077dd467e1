#include <benchmark/benchmark.h>

#include "confhom/extengine.hpp"

using namespace confhom;

static void BM_NuiRecursion(benchmark::State& state) {
    int u = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(compute_Nui(u, 3, false));
}
BENCHMARK(BM_NuiRecursion)->Arg(4)->Arg(6)->Arg(8);

static void BM_CobarOracle(benchmark::State& state) {
    auto bu = build_Bu(static_cast<int>(state.range(0)), 3, false);
    for (auto _ : state)
        benchmark::DoNotOptimize(cobar_ext_dims(bu, static_cast<int>(state.range(1)), -8, 1));
}
BENCHMARK(BM_CobarOracle)->Args({4, 16})->Args({6, 24});

static void BM_TamenessCheck(benchmark::State& state) {
    auto bu = build_Bu(static_cast<int>(state.range(0)), 3, false);
    for (auto _ : state) benchmark::DoNotOptimize(check_tame(bu, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_TamenessCheck)->Arg(4)->Arg(6);

static void BM_TheoremBTable(benchmark::State& state) {
    auto ring = CoefficientRing::prime_field(3);
    for (auto _ : state)
        benchmark::DoNotOptimize(theoremB_betti(static_cast<int>(state.range(0)), ring, 8));
}
BENCHMARK(BM_TheoremBTable)->Arg(1)->Arg(2);
