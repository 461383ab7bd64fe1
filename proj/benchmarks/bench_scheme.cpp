#include <benchmark/benchmark.h>

#include "clusterforge/scheme.hpp"

using namespace clusterforge;

static void BM_Mst(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto w = edge_weights(lennard_jones(), random_configuration(n, 3, 1.0, 1));
  const LabeledGraph g{EdgeSet::complete(n)};
  for (auto _ : state) benchmark::DoNotOptimize(mst(g, w));
}
BENCHMARK(BM_Mst)->DenseRange(4, 9);

static void BM_VerifyPartition(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto w = edge_weights(lennard_jones(), random_configuration(n, 3, 1.0, 2));
  for (auto _ : state) benchmark::DoNotOptimize(verify_partition(n, w, 1).passed);
}
BENCHMARK(BM_VerifyPartition)->DenseRange(5, 7)->Unit(benchmark::kMillisecond);
