#include <catch_amalgamated.hpp>

#include "fairb/fair_loop.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace fairb;
namespace ft = fairb::testing;

namespace {

const StateSpace kU("u", 4);

Command guarded(std::initializer_list<std::size_t> g, std::vector<StateRelation::Pair> pairs) {
  return Command::guard(StateSet::of(kU, g), Command::prim(StateRelation(kU, kU, pairs)));
}

FairLoop ctr_loop() {
  return FairLoop(StateSet::of(kU, {3}), guarded({1, 2}, {{1, 3}, {2, 3}}), guarded({1, 2}, {{1, 2}, {2, 1}}));
}

}  // namespace

TEST_CASE("CTR loop") {
  const auto loop = ctr_loop();
  CHECK(loop_pre(loop).is_full());
  CHECK(check_termination_lemma(loop).holds());
  const auto p = StateSet::of(kU, {1, 2});
  CHECK(check_total_correctness(loop, p).holds());
  CHECK((p | loop.exit()).is_subset_of(loop_str(loop, loop.exit())));
  CHECK(loop_guard(loop) == ~lfp(loop_functional(loop, StateSet::empty(kU))));
}

TEST_CASE("degenerate loops") {
  const auto rest = guarded({1, 2}, {{1, 2}, {2, 1}});
  // Exit everywhere: nothing runs.
  const FairLoop all(StateSet::full(kU), guarded({1}, {{1, 3}}), rest);
  CHECK(loop_pre(all).is_full());
  CHECK(loop_str(all, StateSet::empty(kU)).is_full());
  CHECK(loop_guard(all).is_empty());
  CHECK(loop_functional(all, StateSet::empty(kU))(StateSet::empty(kU)).is_full());
  // Helpful enabled everywhere.
  const FairLoop eager(StateSet::empty(kU), Command::prim(StateRelation::identity(kU)), rest);
  CHECK(loop_pre(eager).is_full());
  // Helpful never enabled, no exit, rest loops: termination lemma is vacuous.
  const FairLoop stuck(StateSet::empty(kU), Command::magic(kU), rest);
  CHECK(check_termination_lemma(stuck).holds());
  CHECK(!loop_pre(stuck).contains(1));
  CHECK(check_total_correctness(stuck, StateSet::empty(kU)).holds());
}

TEST_CASE("r = u gives the termination set") {
  ft::Rng rng(1);
  for (int k = 0; k < 100; ++k) {
    const auto u = ft::make_space(1 + k % 6);
    const auto loop = ft::random_fair_loop(u, rng);
    CHECK(loop_liberal(loop, StateSet::full(u)).is_full());
    CHECK(loop_str(loop, StateSet::full(u)) == loop_pre(loop));
  }
}

TEST_CASE("functional with r = u and an always-terminating helpful") {
  ft::Rng rng(2);
  const auto u = ft::make_space(5);
  for (int k = 0; k < 50; ++k) {
    const auto loop = ft::random_fair_loop(u, rng);
    const auto f = loop_functional(loop, StateSet::full(u));
    for (ft::Mask x = 0; x < 32; ++x) {
      const auto xs = ft::from_mask(u, x);
      CHECK(f(xs) == (loop.exit() | str_apply(loop.rest(), xs)));
    }
  }
}

TEST_CASE("total correctness reports the failing hypothesis") {
  // rest leaves p | exit from state 1.
  const FairLoop loop(StateSet::of(kU, {3}), guarded({1, 2}, {{1, 3}, {2, 3}}), guarded({1}, {{1, 0}}));
  const auto v = check_total_correctness(loop, StateSet::of(kU, {1, 2}));
  CHECK(v.outcome == LemmaOutcome::HypothesisFailed);
  CHECK(v.witnesses == std::vector<std::size_t>{1});
}

TEST_CASE("termination set by unfolding the loop once") {
  // pre(X) is the least x with x = exit | pre((rest ; {x}) dovetail helpful).
  ft::Rng rng(3);
  for (int k = 0; k < 200; ++k) {
    const auto u = ft::make_space(1 + k % 6);
    const auto loop = ft::random_fair_loop(u, rng);
    const SetFunction unfold(u, [&](const StateSet& x) {
      const auto body = Command::seq(loop.rest(), Command::precond(x, Command::skip(u)));
      return pre_of(Command::guard(~loop.exit(), Command::dovetail(body, loop.helpful())));
    });
    CHECK(lfp(unfold) == loop_pre(loop));
  }
}
