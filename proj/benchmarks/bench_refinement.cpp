#include <benchmark/benchmark.h>

#include "bench_util.hpp"
#include "fairb/obligations.hpp"

using namespace fairb;

namespace {

// Abstract system on n states, concrete copy with each state split in two
// and the same transitions between the copies.
RefinementPair split_pair(std::size_t n) {
  const auto abs = bench::random_system(n, 2, 9);
  const StateSpace v("v", 2 * n);
  std::vector<Event> es;
  for (std::size_t e = 0; e < abs.events().size(); ++e) {
    std::vector<StateRelation::Pair> pairs;
    for (std::size_t x = 0; x < n; ++x)
      for (auto y : abs.transitions(e).successors(x)) pairs.emplace_back(2 * x + (y % 2), 2 * y + (x % 2));
    StateRelation rel(v, v, pairs);
    es.push_back({abs.events()[e].label, Command::guard(rel.domain(), Command::prim(rel))});
  }
  std::vector<StateRelation::Pair> glue;
  for (std::size_t y = 0; y < 2 * n; ++y) glue.emplace_back(y, y / 2);
  RefinementPair::Refines refines;
  for (const auto& l : abs.labels()) refines[l] = l;
  return RefinementPair("R", abs, EventSystem("v", v, std::move(es)), StateRelation(v, abs.space(), glue), refines);
}

}  // namespace

static void BM_RefinementExhaustive(benchmark::State& state) {
  const auto rp = split_pair(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(check_refinement(rp, {.exhaustive = true}));
}
BENCHMARK(BM_RefinementExhaustive)->DenseRange(3, 6);

static void BM_RefinementStructural(benchmark::State& state) {
  const auto rp = split_pair(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(check_refinement(rp, {.samples = 64}));
}
BENCHMARK(BM_RefinementStructural)->RangeMultiplier(4)->Range(16, 1024);
