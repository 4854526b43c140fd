#include "fairb/obligations.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "fairb/error.hpp"
#include "fairb/fair_loop.hpp"
#include "fairb/oracle.hpp"

namespace fairb {

namespace {

constexpr std::size_t kRefinementEnumerationLimit = 12;
constexpr std::size_t kRefinementExhaustiveMax = 18;

void add_witnesses(ObligationReport& report, const StateSet& states, const std::string& role) {
  states.for_each([&](std::size_t s) { report.witnesses.push_back({states.space(), s, role}); });
}

ObligationReport make_report(std::string id, std::string subject, std::vector<std::string> refs = {}) {
  ObligationReport r;
  r.id = std::move(id);
  r.subject = std::move(subject);
  r.refs = std::move(refs);
  return r;
}

ObligationReport gate_failure(std::string id, std::string subject, const std::string& what,
                              const ObligationReport* cause = nullptr) {
  auto r = make_report(std::move(id), std::move(subject));
  r.verdict = Verdict::HypothesisFailed;
  r.narrative = "hypothesis not met: " + what;
  if (cause) {
    r.refs.push_back(cause->id + ":" + cause->subject);
    r.witnesses = cause->witnesses;
    if (!cause->narrative.empty()) r.narrative += " (" + cause->narrative + ")";
  }
  return r;
}

void validate_helpful(const EventSystem& sys, const std::vector<std::string>& helpful) {
  if (helpful.empty()) throw InvalidModel("helpful event set is empty");
  std::set<std::string> seen;
  for (const auto& h : helpful) {
    if (!sys.has_event(h)) throw InvalidModel("unknown helpful event '" + h + "' in '" + sys.name() + "'");
    if (!seen.insert(h).second) throw InvalidModel("helpful event '" + h + "' listed twice");
  }
}

std::vector<std::string> complement_labels(const EventSystem& sys, const std::vector<std::string>& chosen) {
  std::vector<std::string> out;
  for (const auto& e : sys.events())
    if (std::find(chosen.begin(), chosen.end(), e.label) == chosen.end()) out.push_back(e.label);
  return out;
}

std::string join(const std::vector<std::string>& xs) {
  std::string out;
  for (const auto& x : xs) out += (out.empty() ? "" : ", ") + x;
  return out;
}

}  // namespace

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::HypothesisFailed: return "hypothesis-failed";
  }
  return "?";
}

SplitSystem split_system(const EventSystem& sys, const std::vector<std::string>& helpful) {
  validate_helpful(sys, helpful);
  return {sys.choice_of(helpful), sys.choice_of(complement_labels(sys, helpful))};
}

ObligationReport check_wf0(const EventSystem& sys, const EnsuresProperty& prop) {
  require_same_space(sys.space(), prop.p.space());
  require_same_space(sys.space(), prop.q.space());
  auto report = make_report("WF0", prop.name, {prop.name});
  const auto missing = (prop.p - prop.q) - str_apply(sys.as_command(), prop.p | prop.q);
  if (missing.is_empty()) {
    report.narrative = "every event keeps p - q within p | q";
  } else {
    report.verdict = Verdict::Fail;
    report.narrative = "some event can leave p | q from p - q";
    add_witnesses(report, missing, "may leave p | q");
  }
  return report;
}

ObligationReport check_wf1(const EventSystem& sys, const EnsuresProperty& prop) {
  require_same_space(sys.space(), prop.p.space());
  require_same_space(sys.space(), prop.q.space());
  const auto split = split_system(sys, prop.helpful);
  auto report = make_report("WF1", prop.name, {prop.name});
  const auto pending = prop.p - prop.q;
  const auto disabled = pending - grd_of(split.helpful);
  const auto misses = pending - str_apply(split.helpful, prop.q);
  if (disabled.is_empty() && misses.is_empty()) {
    report.narrative = "helpful events {" + join(prop.helpful) + "} are enabled on p - q and establish q";
    return report;
  }
  report.verdict = Verdict::Fail;
  report.narrative = "helpful events {" + join(prop.helpful) + "} do not always establish q from p - q";
  add_witnesses(report, disabled, "helpful events disabled");
  add_witnesses(report, misses - disabled, "helpful step may miss q");
  return report;
}

ObligationReport check_ensures(const EventSystem& sys, const EnsuresProperty& prop) {
  auto wf0 = check_wf0(sys, prop);
  auto wf1 = check_wf1(sys, prop);
  auto report = make_report("ENSURES", prop.name, {prop.name, "WF0", "WF1"});
  if (!wf0.passed() || !wf1.passed()) {
    report.verdict = Verdict::Fail;
    report.narrative = std::string(wf0.passed() ? "" : "WF0 fails") + (!wf0.passed() && !wf1.passed() ? "; " : "") +
                       (wf1.passed() ? "" : "WF1 fails");
    report.witnesses = wf0.witnesses;
    report.witnesses.insert(report.witnesses.end(), wf1.witnesses.begin(), wf1.witnesses.end());
    return report;
  }
  const auto split = split_system(sys, prop.helpful);
  const FairLoop loop(prop.q, split.helpful, split.rest);
  const auto total = check_total_correctness(loop, prop.p);
  if (!total.holds()) {
    report.verdict = Verdict::Fail;
    report.narrative = "fair loop self-check failed: " + total.detail;
    for (auto s : total.witnesses) report.witnesses.push_back({sys.space(), s, "outside X(q)(q)"});
    return report;
  }
  report.narrative = "WF0 and WF1 hold; p | q ⊆ X(q)(q)";
  return report;
}

ObligationReport check_event_refinement(const RefinementPair& rp, const std::string& concrete_label,
                                        const RefinementCheckOptions& options) {
  const auto& abs = rp.abstract_system();
  const auto& con = rp.concrete_system();
  const auto& r = rp.gluing();
  const auto target = rp.refined_by(concrete_label);
  const auto abstract_cmd = target ? abs.event(*target).command : Command::skip(abs.space());
  const auto& concrete_cmd = con.event(concrete_label).command;
  auto report = make_report("REF", concrete_label, {concrete_label, target ? *target : "skip"});

  const auto n = con.space().size();
  const bool enumerate = n <= kRefinementEnumerationLimit || (options.exhaustive && n <= kRefinementExhaustiveMax);
  if (options.exhaustive && n > kRefinementExhaustiveMax)
    throw SizeGateExceeded("exhaustive refinement check needs at most " + std::to_string(kRefinementExhaustiveMax) +
                           " concrete states, got " + std::to_string(n));
  if (!enumerate && options.samples == 0)
    throw SizeGateExceeded("refinement check on " + std::to_string(n) +
                           " concrete states needs --exhaustive (up to 18 states) or --samples");

  // F(~r[~s]) ⊆ ~r[~F'(s)]
  auto check = [&](const StateSet& s) {
    const auto lhs = str_apply(abstract_cmd, ~r.image(~s));
    const auto rhs = ~r.image(~str_apply(concrete_cmd, s));
    const auto missing = lhs - rhs;
    if (missing.is_empty()) return true;
    report.verdict = Verdict::Fail;
    report.narrative = "condition fails for s = " + s.to_string();
    add_witnesses(report, missing, "abstract state in F(~r[~s]) outside ~r[~F'(s)]");
    (~s).for_each([&](std::size_t y) { report.witnesses.push_back({con.space(), y, "outside s"}); });
    return false;
  };

  if (enumerate) {
    const std::uint64_t subsets = std::uint64_t{1} << n;
    for (std::uint64_t m = 0; m < subsets; ++m)
      if (!check(StateSet::from_mask(con.space(), m))) return report;
    report.narrative = "holds for all " + std::to_string(subsets) + " subsets of v";
    return report;
  }

  // Both sides are conjunctive in s, so the co-atoms v - {y} and v itself
  // generate every case. For a co-atom the inclusion is the simulation
  // condition: a concrete step y0 -> y from a state glued to x is matched by
  // an abstract step x -> x1 with y glued to x1.
  if (!check(StateSet::full(con.space()))) return report;
  const auto& tcon = con.transitions(con.index_of(concrete_label));
  const auto tabs = target ? abs.transitions(abs.index_of(*target)) : StateRelation::identity(abs.space());
  for (std::size_t y0 = 0; y0 < n; ++y0) {
    for (auto x : r.successors(y0)) {
      for (auto y : tcon.successors(y0)) {
        const auto glued = r.successors(y);
        const auto steps = tabs.successors(x);
        const bool matched = std::any_of(steps.begin(), steps.end(), [&](std::uint32_t x1) {
          return std::find(glued.begin(), glued.end(), x1) != glued.end();
        });
        if (matched) continue;
        report.verdict = Verdict::Fail;
        report.narrative = "concrete step " + con.space().label(y0) + " -> " + con.space().label(y) +
                           " has no matching abstract step from " + abs.space().label(x) + " (s = v - {" +
                           con.space().label(y) + "})";
        report.witnesses.push_back({abs.space(), x, "abstract state in F(~r[~s]) outside ~r[~F'(s)]"});
        report.witnesses.push_back({con.space(), y0, "concrete source"});
        report.witnesses.push_back({con.space(), y, "outside s"});
        return report;
      }
    }
  }
  std::mt19937_64 rng(options.seed);
  std::bernoulli_distribution coin(0.5);
  for (std::size_t i = 0; i < options.samples; ++i) {
    StateSetBuilder b(con.space());
    for (std::size_t y = 0; y < n; ++y)
      if (coin(rng)) b.insert(y);
    if (!check(std::move(b).build())) return report;
  }
  report.narrative = "holds on v, all co-atoms of v and " + std::to_string(options.samples) + " sampled subsets";
  return report;
}

std::vector<ObligationReport> check_refinement(const RefinementPair& rp, const RefinementCheckOptions& options) {
  std::vector<ObligationReport> out;
  for (const auto& e : rp.concrete_system().events()) out.push_back(check_event_refinement(rp, e.label, options));
  return out;
}

RefinedSets refined_sets(const RefinementPair& rp, const EnsuresProperty& prop) {
  const auto& abs = rp.abstract_system();
  const auto& con = rp.concrete_system();
  validate_helpful(abs, prop.helpful);
  require_same_space(abs.space(), prop.p.space());
  require_same_space(abs.space(), prop.q.space());
  std::vector<std::string> helpful;
  for (const auto& h : prop.helpful) {
    auto refiners = rp.refiners_of(h);
    helpful.insert(helpful.end(), refiners.begin(), refiners.end());
  }
  auto helpful_cmd = con.choice_of(helpful);
  auto rest_cmd = con.choice_of(complement_labels(con, helpful));
  auto guard = grd_of(helpful_cmd);
  return {rp.to_concrete(prop.p), rp.to_concrete(prop.q), rp.to_concrete(prop.p - prop.q), std::move(guard),
          std::move(helpful_cmd), std::move(rest_cmd), std::move(helpful)};
}

namespace {

// Every refinement condition and the abstract ensures; nullopt when all pass.
std::optional<ObligationReport> refinement_hypotheses(const RefinementPair& rp, const EnsuresProperty& prop,
                                                      const std::string& id, const RefinementCheckOptions& options) {
  auto abstract = check_ensures(rp.abstract_system(), prop);
  if (!abstract.passed()) return gate_failure(id, prop.name, "abstract ensures '" + prop.name + "'", &abstract);
  for (auto& ref : check_refinement(rp, options))
    if (!ref.passed()) return gate_failure(id, prop.name, "refinement of event '" + ref.subject + "'", &ref);
  return std::nullopt;
}

ObligationReport inclusion(const std::string& subject, const StateSet& lhs, const StateSet& rhs,
                           const std::string& role, std::vector<std::string> refs) {
  auto report = make_report("INCL", subject, std::move(refs));
  const auto missing = lhs - rhs;
  if (missing.is_empty()) {
    report.narrative = subject + " holds";
  } else {
    report.verdict = Verdict::Fail;
    report.narrative = subject + " fails although the refinement conditions hold";
    add_witnesses(report, missing, role);
  }
  return report;
}

}  // namespace

std::vector<ObligationReport> derived_inclusions(const RefinementPair& rp, const EnsuresProperty& prop,
                                                 const RefinementCheckOptions& options) {
  if (auto gate = refinement_hypotheses(rp, prop, "INCL", options)) return {*gate};
  const auto& con = rp.concrete_system();
  const auto sets = refined_sets(rp, prop);
  std::vector<std::string> f_labels;
  for (const auto& e : con.events()) {
    const auto target = rp.refined_by(e.label);
    if (target && std::find(prop.helpful.begin(), prop.helpful.end(), *target) == prop.helpful.end())
      f_labels.push_back(e.label);
  }
  const auto f = con.choice_of(f_labels);
  const auto g = sets.helpful;
  const auto h = con.choice_of(rp.new_events());
  const auto v = StateSet::full(con.space());
  const auto pq = sets.p | sets.q;
  const std::vector<std::string> refs{prop.name};
  return {
      inclusion("F'(v) = v", v, str_apply(f, v), "F' may abort", refs),
      inclusion("G'(v) = v", v, str_apply(g, v), "G' may abort", refs),
      inclusion("H(v) = v", v, str_apply(h, v), "H may abort", refs),
      inclusion("r^-1[p - q] ⊆ F'(p' | q')", sets.pending, str_apply(f, pq), "F' may leave p' | q'", refs),
      inclusion("r^-1[p - q] ⊆ G'(q')", sets.pending, str_apply(g, sets.q), "G' may miss q'", refs),
      inclusion("r^-1[p - q] ⊆ H(p' | q')", sets.pending, str_apply(h, pq), "H may leave p' | q'", refs),
      inclusion("p' - q' ⊆ r^-1[p - q]", sets.p - sets.q, sets.pending, "outside r^-1[p - q]", refs),
  };
}

ObligationReport check_sap(const RefinementPair& rp, const EnsuresProperty& prop) {
  const auto sets = refined_sets(rp, prop);
  auto report = make_report("SAP", prop.name, {prop.name});
  report.refs.insert(report.refs.end(), sets.helpful_labels.begin(), sets.helpful_labels.end());
  const auto lhs = sets.pending & sets.guard;
  const auto missing = lhs - str_apply(sets.rest, sets.guard);
  if (missing.is_empty()) {
    report.narrative = "non-helpful concrete events preserve grd(G') on r^-1[p - q]";
  } else {
    report.verdict = Verdict::Fail;
    report.narrative = "a non-helpful concrete event can disable G' inside r^-1[p - q]";
    add_witnesses(report, missing, "may leave grd(G')");
  }
  return report;
}

LeadsTo lip_goal(const RefinementPair& rp, const EnsuresProperty& prop) {
  const auto sets = refined_sets(rp, prop);
  return {"LIP:" + prop.name, sets.pending - sets.guard, sets.guard};
}

ObligationReport check_refined_ensures(const RefinementPair& rp, const EnsuresProperty& prop, const LipEvidence& lip,
                                       const RefinementCheckOptions& options) {
  const std::string id = "REFINED-ENSURES";
  if (auto gate = refinement_hypotheses(rp, prop, id, options)) return *gate;
  auto sap = check_sap(rp, prop);
  if (!sap.passed()) return gate_failure(id, prop.name, "SAP", &sap);
  const auto goal = lip_goal(rp, prop);
  if (!(lip.goal.lhs == goal.lhs && lip.goal.rhs == goal.rhs))
    return gate_failure(id, prop.name, "LIP evidence addresses a different goal");
  if (!lip.discharged) return gate_failure(id, prop.name, "LIP goal not discharged by " + lip.source);

  const auto& con = rp.concrete_system();
  const auto sets = refined_sets(rp, prop);
  auto report = make_report(id, prop.name, {prop.name, "SAP", "LIP:" + lip.source});

  const FairLoop loop(sets.q, sets.helpful, sets.rest);
  const auto partial = (sets.p | sets.q) - loop_liberal(loop, sets.q);
  if (!partial.is_empty()) {
    report.verdict = Verdict::Fail;
    report.narrative = "p' | q' not within the liberal fair loop";
    add_witnesses(report, partial, "outside L(X'(q'))(q')");
    return report;
  }
  const EnsuresProperty concrete{prop.name + "'", sets.helpful_labels, sets.p & sets.guard, sets.q};
  auto ensures = check_ensures(con, concrete);
  if (!ensures.passed()) {
    report.verdict = Verdict::Fail;
    report.narrative = "concrete ensures G' . p' & grd(G') >>w q' fails: " + ensures.narrative;
    report.witnesses = ensures.witnesses;
    return report;
  }
  const auto units = helpful_units(con, sets.helpful_labels);
  for (const auto& [lhs, what] : {std::pair{sets.p & sets.guard, "p' & grd(G') ~> q'"}, std::pair{sets.p, "p' ~> q'"}}) {
    auto verdict = semantic_leadsto(con, lhs, sets.q, units);
    if (!verdict.holds) {
      report.verdict = Verdict::Fail;
      report.narrative = std::string("fair-execution oracle refutes ") + what;
      report.lasso = verdict.lasso;
      if (verdict.lasso) report.witnesses.push_back({con.space(), verdict.lasso->cycle.front(), "fair cycle avoiding q'"});
      return report;
    }
  }
  report.narrative = "concrete ensures G' . p' & grd(G') >>w q' and p' ~> q' hold";
  return report;
}

}  // namespace fairb
