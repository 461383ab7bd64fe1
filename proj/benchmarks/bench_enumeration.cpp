#include <benchmark/benchmark.h>

#include "clusterforge/graphs.hpp"

using namespace clusterforge;

static void BM_ForEachConnected(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    std::uint64_t count = 0;
    for_each_connected(n, [&](std::uint64_t) { ++count; });
    benchmark::DoNotOptimize(count);
  }
}
BENCHMARK(BM_ForEachConnected)->DenseRange(4, 6)->Unit(benchmark::kMillisecond);

static void BM_PruferDecode(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<int> code(n - 2, 0);
  for (auto _ : state) {
    for (int k = 0; k < n - 2; ++k) code[k] = (code[k] + k + 1) % n;
    benchmark::DoNotOptimize(prufer_decode(n, code));
  }
}
BENCHMARK(BM_PruferDecode)->DenseRange(4, 9);
