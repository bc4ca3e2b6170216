#include <benchmark/benchmark.h>

#include "homascend/extended.hpp"

using namespace homascend;

static void BM_IsExtendedGaussian(benchmark::State& state) {
  Example37 ex = example37();
  FModule n = example37_module(ex, ex.gaussian(state.range(0), state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(is_extended(ex.e, n).extended());
}
BENCHMARK(BM_IsExtendedGaussian)->Args({-2, 0})->Args({0, 1})->Unit(benchmark::kMillisecond);

// S/(X + iY) summed with extended modules of growing size
static void BM_IsExtendedSum(benchmark::State& state) {
  Example37 ex = example37();
  FModule n = example37_module(ex, ex.gaussian(0, 1));
  for (int j = 0; j < state.range(0); ++j) n = direct_sum(n, example37_module(ex, ex.gaussian(j, 0)));
  for (auto _ : state) benchmark::DoNotOptimize(is_extended(ex.e, n).extended());
}
BENCHMARK(BM_IsExtendedSum)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

static void BM_KrsClasses(benchmark::State& state) {
  Example37 ex = example37();
  FModule m = FModule::residue(ex.r);
  for (int j = 0; j < state.range(0); ++j) m = direct_sum(m, j % 2 ? FModule::free(ex.r, 1) : FModule::residue(ex.r));
  for (auto _ : state) benchmark::DoNotOptimize(krs_classes(m).classes.size());
}
BENCHMARK(BM_KrsClasses)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
