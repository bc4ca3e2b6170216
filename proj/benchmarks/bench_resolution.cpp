#include <benchmark/benchmark.h>

#include "homascend/fmodule.hpp"

using namespace homascend;

// Residue field of Q[X,Y]/(X,Y)^n; Betti numbers grow like 2^i.
static void BM_MinimalResolution(benchmark::State& state) {
  Algebra a = LocalAlgebra::from_presentation(Field::rationals(), {"X", "Y"}, {}, static_cast<int>(state.range(0)));
  FModule k = FModule::residue(a);
  const auto length = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(minimal_resolution(k, length));
}
BENCHMARK(BM_MinimalResolution)->Args({2, 3})->Args({2, 5})->Args({3, 3})->Unit(benchmark::kMillisecond);

static void BM_ExtResidue(benchmark::State& state) {
  Algebra a = LocalAlgebra::from_presentation(Field::prime(5), {"x"}, {}, static_cast<int>(state.range(0)));
  FModule k = FModule::residue(a), r = FModule::free(a, 1);
  for (auto _ : state) benchmark::DoNotOptimize(ext(k, r, 5).dim);
}
BENCHMARK(BM_ExtResidue)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
