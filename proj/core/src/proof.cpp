#include "fairb/proof.hpp"

#include "fairb/error.hpp"

namespace fairb {

ObligationReport check_unless(const EventSystem& sys, const Unless& u) {
  require_same_space(sys.space(), u.lhs.space());
  require_same_space(sys.space(), u.rhs.space());
  ObligationReport report{"UNLESS", u.name, Verdict::Pass, {}, {}, {u.name}, std::nullopt, std::nullopt};
  const auto missing = (u.lhs - u.rhs) - str_apply(sys.as_command(), u.lhs | u.rhs);
  missing.for_each([&](std::size_t s) { report.witnesses.push_back({sys.space(), s, "can leave lhs | rhs"}); });
  if (!missing.is_empty()) {
    report.verdict = Verdict::Fail;
    report.narrative = "some event leaves lhs | rhs from lhs - rhs";
  } else {
    report.narrative = "every event keeps lhs - rhs within lhs | rhs";
  }
  return report;
}

std::string_view to_string(Rule r) noexcept {
  switch (r) {
    case Rule::Brl: return "brl";
    case Rule::Tra: return "tra";
    case Rule::Dsj: return "dsj";
    case Rule::Psp: return "psp";
    case Rule::Can: return "can";
    case Rule::Thlto: return "thlto";
  }
  return "?";
}

std::optional<Rule> parse_rule(std::string_view name) noexcept {
  for (auto r : {Rule::Brl, Rule::Tra, Rule::Dsj, Rule::Psp, Rule::Can, Rule::Thlto})
    if (to_string(r) == name) return r;
  return std::nullopt;
}

const ObligationReport& ProofEnv::add_ensures(const EnsuresProperty& prop) {
  auto report = check_ensures(sys_, prop);
  auto& slot = ensures_.insert_or_assign(prop.name, Entry{prop, std::move(report)}).first->second;
  return slot.report;
}

const ObligationReport& ProofEnv::add_unless(const Unless& u) {
  auto report = check_unless(sys_, u);
  auto& slot = unless_.insert_or_assign(u.name, UnlessEntry{u, std::move(report)}).first->second;
  return slot.report;
}

const EnsuresProperty* ProofEnv::ensures(const std::string& name) const {
  auto it = ensures_.find(name);
  return it == ensures_.end() ? nullptr : &it->second.prop;
}

const Unless* ProofEnv::unless(const std::string& name) const {
  auto it = unless_.find(name);
  return it == unless_.end() ? nullptr : &it->second.prop;
}

bool ProofEnv::ensures_passed(const std::string& name) const {
  auto it = ensures_.find(name);
  return it != ensures_.end() && it->second.report.passed();
}

bool ProofEnv::unless_passed(const std::string& name) const {
  auto it = unless_.find(name);
  return it != unless_.end() && it->second.report.passed();
}

namespace {

RuleResult fail(const ProofStep& step, const std::string& msg) {
  return {std::nullopt, std::string(to_string(step.rule)) + ": " + msg};
}

RuleResult conclude(const ProofStep& step, LeadsTo computed) {
  computed.name = step.name;
  if (step.claim && !(step.claim->lhs == computed.lhs && step.claim->rhs == computed.rhs))
    return fail(step, "stated conclusion " + step.claim->lhs.to_string() + " ~> " + step.claim->rhs.to_string() +
                          " differs from derived " + computed.lhs.to_string() + " ~> " + computed.rhs.to_string());
  return {std::move(computed), {}};
}

}  // namespace

RuleResult apply_rule(const ProofEnv& env, const std::map<std::string, LeadsTo>& derived, const ProofStep& step) {
  const auto& sys = env.system();
  auto leadsto = [&](const std::string& name) -> const LeadsTo* {
    auto it = derived.find(name);
    return it == derived.end() ? nullptr : &it->second;
  };
  auto expect_count = [&](std::size_t n) { return step.premises.size() == n; };

  switch (step.rule) {
    case Rule::Brl: {
      if (step.inline_ensures) {
        if (!step.premises.empty()) return fail(step, "expected either a property name or an inline ensures");
        auto report = check_ensures(sys, *step.inline_ensures);
        if (!report.passed()) return fail(step, "inline ensures does not hold (" + report.narrative + ")");
        return conclude(step, {step.name, step.inline_ensures->p, step.inline_ensures->q});
      }
      if (!expect_count(1)) return fail(step, "expected one ensures property");
      const auto* prop = env.ensures(step.premises[0]);
      if (!prop) return fail(step, "unknown ensures property '" + step.premises[0] + "'");
      if (!env.ensures_passed(step.premises[0]))
        return fail(step, "ensures property '" + step.premises[0] + "' did not pass WF0/WF1");
      return conclude(step, {step.name, prop->p, prop->q});
    }
    case Rule::Tra: {
      if (!expect_count(2)) return fail(step, "expected P ~> R, R ~> Q");
      const auto* a = leadsto(step.premises[0]);
      const auto* b = leadsto(step.premises[1]);
      if (!a || !b) return fail(step, "unresolved premise");
      if (!(a->rhs == b->lhs))
        return fail(step, "middle sets differ: " + a->rhs.to_string() + " vs " + b->lhs.to_string());
      return conclude(step, {step.name, a->lhs, b->rhs});
    }
    case Rule::Dsj: {
      if (step.premises.empty()) return fail(step, "expected a finite family P_m ~> Q");
      std::optional<LeadsTo> acc;
      for (const auto& name : step.premises) {
        const auto* a = leadsto(name);
        if (!a) return fail(step, "unresolved premise '" + name + "'");
        if (!acc) {
          acc = *a;
        } else {
          if (!(acc->rhs == a->rhs)) return fail(step, "family members have different targets");
          acc->lhs = acc->lhs | a->lhs;
        }
      }
      return conclude(step, std::move(*acc));
    }
    case Rule::Psp: {
      if (!expect_count(2)) return fail(step, "expected P ~> Q, R unless S");
      const auto* a = leadsto(step.premises[0]);
      if (!a) return fail(step, "unresolved premise '" + step.premises[0] + "'");
      const auto* u = env.unless(step.premises[1]);
      if (!u) return fail(step, "unknown unless property '" + step.premises[1] + "'");
      if (!env.unless_passed(step.premises[1])) return fail(step, "unless property '" + u->name + "' does not hold");
      return conclude(step, {step.name, a->lhs & u->lhs, (a->rhs & u->lhs) | u->rhs});
    }
    case Rule::Can: {
      if (!expect_count(2)) return fail(step, "expected P ~> Q | R, R ~> R'");
      const auto* a = leadsto(step.premises[0]);
      const auto* b = leadsto(step.premises[1]);
      if (!a || !b) return fail(step, "unresolved premise");
      const auto& x = a->rhs;
      const auto& r = b->lhs;
      const auto& r2 = b->rhs;
      if (!r.is_subset_of(x)) return fail(step, "R is not part of the first target");
      const auto c = step.claim ? step.claim->rhs : (x - r) | r2;
      if (step.claim && !(step.claim->lhs == a->lhs)) return fail(step, "stated source differs from P");
      if (!r2.is_subset_of(c) || !(x - r).is_subset_of(c) || !c.is_subset_of(x | r2))
        return fail(step, "target " + c.to_string() + " is not Q | R' for any Q with Q | R = " + x.to_string());
      return {LeadsTo{step.name, a->lhs, c}, {}};
    }
    case Rule::Thlto: {
      if (!expect_count(1)) return fail(step, "expected one premise");
      if (!step.claim) return fail(step, "a stated conclusion is required");
      const auto* a = leadsto(step.premises[0]);
      if (!a) return fail(step, "unresolved premise '" + step.premises[0] + "'");
      if (!step.claim->lhs.is_subset_of(a->lhs)) return fail(step, "source is not a member of the premise family");
      if (!(step.claim->rhs == a->rhs)) return fail(step, "target differs from the premise target");
      return {LeadsTo{step.name, step.claim->lhs, a->rhs}, {}};
    }
  }
  return fail(step, "unknown rule");
}

ScriptResult check_script(const ProofEnv& env, const ProofScript& script, const LeadsTo& goal) {
  ScriptResult result;
  std::map<std::string, LeadsTo> derived;
  for (std::size_t i = 0; i < script.steps.size(); ++i) {
    const auto& step = script.steps[i];
    if (derived.count(step.name)) {
      result.failing_step = i;
      result.message = "step '" + step.name + "' is defined twice";
      return result;
    }
    auto applied = apply_rule(env, derived, step);
    if (!applied.ok()) {
      result.failing_step = i;
      result.message = "step " + std::to_string(i + 1) + " '" + step.name + "': " + applied.error;
      return result;
    }
    result.conclusions.push_back(*applied.conclusion);
    derived.emplace(step.name, std::move(*applied.conclusion));
  }
  if (result.conclusions.empty()) {
    result.message = "script has no steps";
    return result;
  }
  const auto& last = result.conclusions.back();
  if (!(last.lhs == goal.lhs && last.rhs == goal.rhs)) {
    result.failing_step = script.steps.size() - 1;
    result.message = "last step derives " + last.lhs.to_string() + " ~> " + last.rhs.to_string() + ", goal is " +
                     goal.lhs.to_string() + " ~> " + goal.rhs.to_string();
    return result;
  }
  result.passed = true;
  result.message = "goal derived in " + std::to_string(script.steps.size()) + (script.steps.size() == 1 ? " step" : " steps");
  return result;
}

std::vector<LeadsTo> check_thlto(const LeadsTo& premise, const std::vector<StateSet>& family, const StateSet& qset) {
  std::vector<LeadsTo> out;
  for (std::size_t i = 0; i < family.size(); ++i) {
    auto member = family[i] & qset;
    if (!member.is_subset_of(premise.lhs))
      throw InvalidModel("family member " + std::to_string(i) + " is not within the premise source");
    out.push_back({premise.name + "[" + std::to_string(i) + "]", std::move(member), premise.rhs});
  }
  return out;
}

}  // namespace fairb
