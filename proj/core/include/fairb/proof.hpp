#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fairb/event_system.hpp"
#include "fairb/leadsto.hpp"
#include "fairb/obligations.hpp"

namespace fairb {

/// lhs - rhs ⊆ S(lhs | rhs)
ObligationReport check_unless(const EventSystem& sys, const Unless& u);

enum class Rule { Brl, Tra, Dsj, Psp, Can, Thlto };
std::string_view to_string(Rule r) noexcept;
std::optional<Rule> parse_rule(std::string_view name) noexcept;

/// One rule application. Premises name earlier steps, ensures properties
/// (BRL) or unless properties (second PSP premise).
struct ProofStep {
  std::string name;
  Rule rule = Rule::Brl;
  std::vector<std::string> premises;
  /// BRL only: an ensures stated in place, checked when the step is applied.
  std::optional<EnsuresProperty> inline_ensures;
  /// Stated conclusion. Required for THLTO; selects the result of CAN;
  /// must match the computed conclusion for the other rules.
  std::optional<LeadsTo> claim;
};

struct ProofScript {
  std::string name;
  std::string goal;
  std::vector<ProofStep> steps;
};

/// The facts a script may cite: ensures and unless properties of one
/// system, each recorded with the outcome of its own check.
class ProofEnv {
 public:
  explicit ProofEnv(EventSystem sys) : sys_(std::move(sys)) {}

  const EventSystem& system() const noexcept { return sys_; }

  /// Runs check_ensures and records the property with its verdict.
  const ObligationReport& add_ensures(const EnsuresProperty& prop);
  /// Runs check_unless and records the property with its verdict.
  const ObligationReport& add_unless(const Unless& u);

  const EnsuresProperty* ensures(const std::string& name) const;
  const Unless* unless(const std::string& name) const;
  bool ensures_passed(const std::string& name) const;
  bool unless_passed(const std::string& name) const;

 private:
  struct Entry {
    EnsuresProperty prop;
    ObligationReport report;
  };
  struct UnlessEntry {
    Unless prop;
    ObligationReport report;
  };
  EventSystem sys_;
  std::map<std::string, Entry> ensures_;
  std::map<std::string, UnlessEntry> unless_;
};

struct RuleResult {
  std::optional<LeadsTo> conclusion;
  std::string error;

  bool ok() const noexcept { return conclusion.has_value(); }
};

/// Applies one rule. `derived` maps earlier step names to their conclusions.
RuleResult apply_rule(const ProofEnv& env, const std::map<std::string, LeadsTo>& derived, const ProofStep& step);

struct ScriptResult {
  bool passed = false;
  std::optional<std::size_t> failing_step;
  std::string message;
  std::vector<LeadsTo> conclusions;
};

/// Applies every step in order; passes iff all succeed and the last
/// conclusion equals the goal.
ScriptResult check_script(const ProofEnv& env, const ProofScript& script, const LeadsTo& goal);

/// Splits (U p_x & Q) ~> R into the member goals (p_x & Q) ~> R. Throws
/// InvalidModel when a member is not within the premise.
std::vector<LeadsTo> check_thlto(const LeadsTo& premise, const std::vector<StateSet>& family, const StateSet& qset);

}  // namespace fairb
