#include <benchmark/benchmark.h>

#include "clusterforge/scheme.hpp"
#include "clusterforge/ursell.hpp"

using namespace clusterforge;

static void BM_UrsellDirect(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto w = edge_weights(lennard_jones(), random_configuration(n, 3, 1.0, 3));
  for (auto _ : state) benchmark::DoNotOptimize(ursell_direct(1.0, w));
}
BENCHMARK(BM_UrsellDirect)->DenseRange(4, 6)->Unit(benchmark::kMicrosecond);

static void BM_PenroseRhs(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto w = edge_weights(lennard_jones(), random_configuration(n, 3, 1.0, 3));
  for (auto _ : state) benchmark::DoNotOptimize(penrose_rhs(1.0, w));
}
BENCHMARK(BM_PenroseRhs)->DenseRange(4, 8)->Unit(benchmark::kMicrosecond);
