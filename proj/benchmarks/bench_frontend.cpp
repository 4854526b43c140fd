#include <benchmark/benchmark.h>

#include <string>

#include "fairb/dsl/elaborate.hpp"
#include "fairb/dsl/parser.hpp"

using namespace fairb;

namespace {

// A counter pair with a configurable range; states grow quadratically.
std::string source(long hi) {
  const auto h = std::to_string(hi);
  return "system S\n  var a : 0.." + h + "\n  var b : 0.." + h +
         "\n  event up when a < " + h + " then a := a + 1 end\n"
         "  event move when a > 0 and b < " + h + " then a := a - 1 || b := b + 1 end\n"
         "  event jump when b > 0 then b :: {0, 1} end\nend\n"
         "property P ensures helpful {up} from a = 0 to a = 1\n";
}

}  // namespace

static void BM_Parse(benchmark::State& state) {
  const auto text = source(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(dsl::parse_document(text));
}
BENCHMARK(BM_Parse)->Arg(10);

static void BM_Elaborate(benchmark::State& state) {
  const auto parsed = dsl::parse_document(source(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(dsl::elaborate(*parsed.document));
  state.counters["states"] = static_cast<double>((state.range(0) + 1) * (state.range(0) + 1));
}
BENCHMARK(BM_Elaborate)->RangeMultiplier(2)->Range(4, 64);
