#include <benchmark/benchmark.h>

#include "confhom/cellcx.hpp"

using namespace confhom;

namespace {

SparseMatrix slice_differential(int g, int n, int bar) {
    ChainSlice slice(g, n, false);
    return slice.diff(bar);
}

}  // namespace

static void BM_SmithNormalForm(benchmark::State& state) {
    auto d = slice_differential(2, static_cast<int>(state.range(0)), 2);
    for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(d));
    state.SetLabel(std::to_string(d.rows()) + "x" + std::to_string(d.cols()));
}
BENCHMARK(BM_SmithNormalForm)->Arg(5)->Arg(7)->Arg(8);

static void BM_RankModP(benchmark::State& state) {
    auto d = slice_differential(2, static_cast<int>(state.range(0)), 3);
    for (auto _ : state) benchmark::DoNotOptimize(rank_mod_p(d, 3));
    state.SetLabel(std::to_string(d.rows()) + "x" + std::to_string(d.cols()));
}
BENCHMARK(BM_RankModP)->Arg(6)->Arg(8);

static void BM_RankRational(benchmark::State& state) {
    auto d = slice_differential(2, static_cast<int>(state.range(0)), 3);
    for (auto _ : state) benchmark::DoNotOptimize(rank_rational(d));
}
BENCHMARK(BM_RankRational)->Arg(6)->Arg(8);

BENCHMARK_MAIN();
