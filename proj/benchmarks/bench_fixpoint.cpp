#include <benchmark/benchmark.h>

#include "bench_util.hpp"
#include "fairb/fair_loop.hpp"
#include "fairb/fixpoint.hpp"

using namespace fairb;

// Backward reachability: lfp(x -> target | pre-image(x)).
static void BM_LfpReachability(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const StateSpace u("u", n);
  std::vector<StateRelation::Pair> pairs;
  for (std::size_t i = 0; i + 1 < n; ++i) pairs.emplace_back(i, i + 1);
  const StateRelation chain(u, u, pairs);
  const auto target = StateSet::of(u, {n - 1});
  const SetFunction f(u, [&](const StateSet& x) { return target | chain.inverse_image(x); });
  for (auto _ : state) benchmark::DoNotOptimize(lfp(f));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LfpReachability)->RangeMultiplier(4)->Range(16, 4096)->Complexity();

static void BM_FairLoopStr(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const StateSpace u("u", n);
  std::mt19937_64 rng(4);
  const FairLoop loop(bench::random_set(u, rng, 0.1), bench::random_event(u, rng), bench::random_event(u, rng));
  const auto r = bench::random_set(u, rng);
  for (auto _ : state) benchmark::DoNotOptimize(loop_str(loop, r));
}
BENCHMARK(BM_FairLoopStr)->RangeMultiplier(4)->Range(16, 4096);
