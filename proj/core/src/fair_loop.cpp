#include "fairb/fair_loop.hpp"

namespace fairb {

FairLoop::FairLoop(StateSet exit, Command helpful, Command rest)
    : exit_(std::move(exit)), helpful_(std::move(helpful)), rest_(std::move(rest)) {
  require_same_space(exit_.space(), helpful_.space());
  require_same_space(exit_.space(), rest_.space());
}

SetFunction loop_functional(const FairLoop& loop, const StateSet& r) {
  require_same_space(r.space(), loop.space());
  auto step = Command::guard(~loop.exit(), Command::precond(str_apply(loop.helpful(), r), loop.rest()));
  return SetFunction(loop.space(), [step = std::move(step)](const StateSet& x) { return str_apply(step, x); });
}

StateSet loop_liberal(const FairLoop& loop, const StateSet& r) { return gfp(loop_functional(loop, r)); }

StateSet loop_pre(const FairLoop& loop) {
  const auto stop = loop.exit() | grd_of(loop.helpful());
  const auto& rest = loop.rest();
  return lfp(SetFunction(loop.space(), [stop, rest](const StateSet& x) { return stop | (~stop & str_apply(rest, x)); }));
}

StateSet loop_str(const FairLoop& loop, const StateSet& r) { return loop_liberal(loop, r) & loop_pre(loop); }

StateSet loop_guard(const FairLoop& loop) {
  return ~lfp(loop_functional(loop, StateSet::empty(loop.space())));
}

namespace {

bool terminating_operands(const FairLoop& loop, LemmaVerdict& verdict) {
  const auto pre_rest = pre_of(loop.rest());
  if (!pre_rest.is_full()) {
    verdict = {LemmaOutcome::HypothesisFailed, "pre(rest) = u", (~pre_rest).members()};
    return false;
  }
  const auto pre_helpful = pre_of(loop.helpful());
  if (!pre_helpful.is_full()) {
    verdict = {LemmaOutcome::HypothesisFailed, "pre(helpful) = u", (~pre_helpful).members()};
    return false;
  }
  return true;
}

bool inclusion_holds(const StateSet& lhs, const StateSet& rhs, const char* name, LemmaVerdict& verdict) {
  const auto missing = lhs - rhs;
  if (missing.is_empty()) return true;
  verdict = {LemmaOutcome::HypothesisFailed, name, missing.members()};
  return false;
}

}  // namespace

LemmaVerdict check_termination_lemma(const FairLoop& loop) {
  LemmaVerdict verdict;
  if (!terminating_operands(loop, verdict)) return verdict;
  const auto missing = (grd_of(loop.helpful()) | loop.exit()) - loop_pre(loop);
  if (!missing.is_empty())
    verdict = {LemmaOutcome::Violated, "grd(helpful) | exit not within loop termination set", missing.members()};
  return verdict;
}

LemmaVerdict check_total_correctness(const FairLoop& loop, const StateSet& p) {
  require_same_space(p.space(), loop.space());
  LemmaVerdict verdict;
  if (!terminating_operands(loop, verdict)) return verdict;
  const auto& q = loop.exit();
  const auto pending = p - q;
  if (!inclusion_holds(pending, str_apply(loop.rest(), p | q), "p - q ⊆ rest(p | q)", verdict)) return verdict;
  if (!inclusion_holds(pending, grd_of(loop.helpful()), "p - q ⊆ grd(helpful)", verdict)) return verdict;
  if (!inclusion_holds(pending, str_apply(loop.helpful(), q), "p - q ⊆ helpful(q)", verdict)) return verdict;
  const auto missing = (p | q) - loop_str(loop, q);
  if (!missing.is_empty()) verdict = {LemmaOutcome::Violated, "p | q not within X(q)(q)", missing.members()};
  return verdict;
}

}  // namespace fairb
