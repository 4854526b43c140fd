#include <benchmark/benchmark.h>

#include "bench_util.hpp"

using namespace fairb;

static void BM_SetUnionIntersect(benchmark::State& state) {
  const StateSpace u("u", static_cast<std::size_t>(state.range(0)));
  std::mt19937_64 rng(1);
  const auto a = bench::random_set(u, rng), b = bench::random_set(u, rng);
  for (auto _ : state) {
    auto c = (a | b) & ~(a - b);
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_SetUnionIntersect)->Range(64, 1 << 20);

static void BM_SetSubset(benchmark::State& state) {
  const StateSpace u("u", static_cast<std::size_t>(state.range(0)));
  std::mt19937_64 rng(2);
  const auto a = bench::random_set(u, rng, 0.2);
  const auto b = a | bench::random_set(u, rng, 0.2);
  for (auto _ : state) benchmark::DoNotOptimize(a.is_subset_of(b));
}
BENCHMARK(BM_SetSubset)->Range(64, 1 << 20);

static void BM_RelationImage(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const StateSpace u("u", n);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::vector<StateRelation::Pair> pairs;
  for (std::size_t i = 0; i < 4 * n; ++i) pairs.emplace_back(pick(rng), pick(rng));
  const StateRelation rel(u, u, pairs);
  const auto a = bench::random_set(u, rng, 0.1);
  for (auto _ : state) {
    auto img = rel.image(a);
    auto pre = rel.inverse_image(a);
    benchmark::DoNotOptimize(img);
    benchmark::DoNotOptimize(pre);
  }
}
BENCHMARK(BM_RelationImage)->Range(64, 1 << 16);
