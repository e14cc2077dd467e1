#include <benchmark/benchmark.h>

#include "confhom/cellcx.hpp"

using namespace confhom;

static void BM_SliceBuild(benchmark::State& state) {
    int g = static_cast<int>(state.range(0)), n = static_cast<int>(state.range(1));
    for (auto _ : state) {
        ChainSlice slice(g, n, false);
        benchmark::DoNotOptimize(slice.dim(0));
    }
    state.SetLabel(std::to_string(count_records(g, n)) + " records");
}
BENCHMARK(BM_SliceBuild)->Args({1, 8})->Args({2, 8})->Args({3, 9});

static void BM_SliceHomologyFp(benchmark::State& state) {
    ChainSlice slice(2, static_cast<int>(state.range(0)), false);
    auto ring = CoefficientRing::prime_field(3);
    for (auto _ : state) benchmark::DoNotOptimize(slice_homology(slice, ring));
}
BENCHMARK(BM_SliceHomologyFp)->Arg(6)->Arg(8);

static void BM_SliceHomologyZ(benchmark::State& state) {
    ChainSlice slice(2, static_cast<int>(state.range(0)), false);
    auto ring = CoefficientRing::integers();
    for (auto _ : state) benchmark::DoNotOptimize(slice_homology(slice, ring));
}
BENCHMARK(BM_SliceHomologyZ)->Arg(6)->Arg(8);

static void BM_DifferentialSquared(benchmark::State& state) {
    int g = 3, n = static_cast<int>(state.range(0));
    auto records = enumerate_records(g, n);
    for (auto _ : state) {
        for (const auto& t : records)
            benchmark::DoNotOptimize(apply_differential(differential(t, g), g).empty());
    }
}
BENCHMARK(BM_DifferentialSquared)->Arg(8)->Arg(10);
