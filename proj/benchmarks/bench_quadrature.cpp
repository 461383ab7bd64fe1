#include <benchmark/benchmark.h>

#include "clusterforge/bounds.hpp"

using namespace clusterforge;

static void BM_QuadChatLJ(benchmark::State& state) {
  const PairPotential lj = lennard_jones();
  const double beta = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(quad_Chat(lj, beta).value);
}
BENCHMARK(BM_QuadChatLJ)->Arg(1)->Arg(10)->Unit(benchmark::kMicrosecond);

static void BM_GFunction(benchmark::State& state) {
  double u = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(g_function(u).value);
    u = u > 1e6 ? 1.0 : u * 1.7;
  }
}
BENCHMARK(BM_GFunction)->Unit(benchmark::kMicrosecond);
