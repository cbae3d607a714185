// Benchmarks for the dense min-plus kernels: parallel implementations
// against their serial references, over a range of matrix sizes.
#include <benchmark/benchmark.h>

#include <random>

#include "mdbl/extvalue.hpp"
#include "mdbl/kernels.hpp"

using namespace mdbl;

namespace {

// A random symmetric matrix with zero diagonal, a sprinkling of infinite
// entries, and shortest-path closure, so the triangle scan sees realistic
// (mostly satisfied) inputs.
ExtMatrix random_metric(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> w(1, 1000);
  std::uniform_int_distribution<int> inf_coin(0, 9);
  ExtMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      if (i == j)
        m.at(i, j) = ExtValue(0);
      else
        m.at(i, j) = inf_coin(rng) == 0 ? ExtValue::inf()
                                        : ExtValue(Rat(w(rng), 1 + w(rng) % 7));
      m.at(j, i) = m.at(i, j);
    }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        m.at(i, j) = min(m.at(i, j), m.at(i, k) + m.at(k, j));
  return m;
}

void bm_min_plus(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  ExtMatrix a = random_metric(n, 1);
  ExtMatrix b = random_metric(n, 2);
  for (auto _ : state) {
    ExtMatrix c = min_plus(a, b);
    benchmark::DoNotOptimize(c);
  }
  state.SetComplexityN(n);
}

void bm_min_plus_serial(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  ExtMatrix a = random_metric(n, 1);
  ExtMatrix b = random_metric(n, 2);
  for (auto _ : state) {
    ExtMatrix c = min_plus_serial(a, b);
    benchmark::DoNotOptimize(c);
  }
  state.SetComplexityN(n);
}

void bm_triangle(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  ExtMatrix m = random_metric(n, 3);
  for (auto _ : state) {
    auto v = triangle_violations(m);
    benchmark::DoNotOptimize(v);
  }
  state.SetComplexityN(n);
}

void bm_triangle_serial(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  ExtMatrix m = random_metric(n, 3);
  for (auto _ : state) {
    auto v = triangle_violations_serial(m);
    benchmark::DoNotOptimize(v);
  }
  state.SetComplexityN(n);
}

}  // namespace

BENCHMARK(bm_min_plus)->RangeMultiplier(2)->Range(32, 256)->Complexity();
BENCHMARK(bm_min_plus_serial)->RangeMultiplier(2)->Range(32, 256)->Complexity();
BENCHMARK(bm_triangle)->RangeMultiplier(2)->Range(32, 256)->Complexity();
BENCHMARK(bm_triangle_serial)->RangeMultiplier(2)->Range(32, 256)->Complexity();

BENCHMARK_MAIN();
