#include <benchmark/benchmark.h>

#include "bench_util.hpp"
#include "fairb/obligations.hpp"
#include "fairb/oracle.hpp"

using namespace fairb;

static void BM_SemanticLeadsto(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto sys = bench::random_system(n, 3, 5);
  std::mt19937_64 rng(6);
  const auto p = bench::random_set(sys.space(), rng, 0.3);
  const auto q = bench::random_set(sys.space(), rng, 0.05);
  for (auto _ : state) benchmark::DoNotOptimize(semantic_leadsto(sys, p, q));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SemanticLeadsto)->RangeMultiplier(4)->Range(64, 1 << 14)->Complexity();

static void BM_Ensures(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto sys = bench::random_system(n, 3, 7);
  std::mt19937_64 rng(8);
  const EnsuresProperty prop{"E", {"e0"}, bench::random_set(sys.space(), rng), bench::random_set(sys.space(), rng)};
  for (auto _ : state) benchmark::DoNotOptimize(check_ensures(sys, prop));
}
BENCHMARK(BM_Ensures)->RangeMultiplier(4)->Range(64, 1 << 14);
