#include <benchmark/benchmark.h>

#include <random>

#include "homascend/snf.hpp"

using namespace homascend;

static PolyMat random_poly_mat(const Field& q, std::size_t n, int degree, std::mt19937_64& rng) {
  PolyRing r(q);
  PolyMat a(q, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<Elem> c;
      for (int t = 0; t <= degree; ++t) c.push_back(q.from_int(static_cast<long>(rng() % 5) - 2));
      if (rng() % 2) c[0] = q.zero();
      a.at(i, j) = r.make(c);
    }
  return a;
}

static void BM_SnfLocalized(benchmark::State& state) {
  Field q = Field::rationals();
  std::mt19937_64 rng(1);
  PolyMat a = random_poly_mat(q, static_cast<std::size_t>(state.range(0)), static_cast<int>(state.range(1)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(snf_localized(a));
}
BENCHMARK(BM_SnfLocalized)->Args({4, 4})->Args({6, 3})->Args({8, 2})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
