// Runs every acceptance criterion and prints one [PASS]/[FAIL] line each.
#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <algorithm>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include "fairb/command.hpp"
#include "fairb/dsl/elaborate.hpp"
#include "fairb/dsl/parser.hpp"
#include "fairb/fair_loop.hpp"
#include "fairb/fixpoint.hpp"
#include "fairb/obligations.hpp"
#include "fairb/oracle.hpp"
#include "fairb/proof.hpp"
#include "generators.hpp"
#include "oracles.hpp"
#include "refinement_gen.hpp"
#include "script_fuzzer.hpp"

using namespace fairb;
namespace ft = fairb::testing;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
  // Set when the criterion cannot be met as stated; reported as a failure
  // but does not change the exit status.
  std::string unattainable;
};

struct Paths {
  std::string cli;
  std::string models;
  std::string schema;
  std::string validator;
  std::string python;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
  std::ostringstream o;
  o.setf(std::ios::fixed);
  o.precision(2);
  o << s << " s";
  return o.str();
}

ft::Mask all_mask(std::size_t n) { return (ft::Mask{1} << n) - 1; }

// Every Dovetail node of a command, outermost first.
void dovetails(const Command& c, std::vector<Command>& out) {
  switch (c.kind()) {
    case Command::Kind::Skip:
    case Command::Kind::Prim:
      return;
    case Command::Kind::Guard:
    case Command::Kind::Precond:
      dovetails(c.body(), out);
      return;
    case Command::Kind::Dovetail:
      out.push_back(c);
      [[fallthrough]];
    case Command::Kind::Choice:
    case Command::Kind::Seq:
      dovetails(c.left(), out);
      dovetails(c.right(), out);
      return;
  }
}

// Liberal transformer and termination set from the defining equations,
// using the outcome semantics for dovetail-free parts.
struct Reference {
  std::function<ft::Mask(ft::Mask)> liberal;
  ft::Mask pre;
};

Reference reference_of(const Command& c) {
  const auto n = c.space().size();
  if (!c.contains_dovetail()) {
    auto o = std::make_shared<ft::Outcomes>(ft::outcomes(c));
    return {[o](ft::Mask r) { return ft::operational_liberal(*o, r); }, ft::operational_str(*o, all_mask(n))};
  }
  const auto full = all_mask(n);
  switch (c.kind()) {
    case Command::Kind::Guard: {
      auto b = reference_of(c.body());
      const auto g = ft::to_mask(c.set());
      return {[b, g, full](ft::Mask r) { return (full & ~g) | b.liberal(r); }, (full & ~g) | b.pre};
    }
    case Command::Kind::Precond: {
      auto b = reference_of(c.body());
      const auto p = ft::to_mask(c.set());
      return {[b, p, full](ft::Mask r) { return (r == full ? full : p) & b.liberal(r); }, p & b.pre};
    }
    case Command::Kind::Choice: {
      auto a = reference_of(c.left()), b = reference_of(c.right());
      return {[a, b](ft::Mask r) { return a.liberal(r) & b.liberal(r); }, a.pre & b.pre};
    }
    case Command::Kind::Seq: {
      auto a = reference_of(c.left()), b = reference_of(c.right());
      // pre(a ; b) = str(a)(pre b) = liberal(a)(pre b) & pre a.
      return {[a, b](ft::Mask r) { return a.liberal(b.liberal(r)); }, a.liberal(b.pre) & a.pre};
    }
    case Command::Kind::Dovetail: {
      auto a = reference_of(c.left()), b = reference_of(c.right());
      const auto grd_a = full & ~(a.liberal(0) & a.pre), grd_b = full & ~(b.liberal(0) & b.pre);
      const auto pre = (a.pre & b.pre) | (grd_a & a.pre) | (grd_b & b.pre);
      return {[a, b](ft::Mask r) { return a.liberal(r) & b.liberal(r); }, pre};
    }
    default:
      break;
  }
  return {};
}

std::vector<Command> command_corpus(std::size_t count, std::uint64_t seed) {
  ft::Rng rng(seed);
  std::vector<Command> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(ft::random_command(ft::make_space(1 + i % 6), rng, 3));
  return out;
}

Outcome ac1() {
  const auto t0 = Clock::now();
  const auto corpus = command_corpus(520, 1);
  std::size_t violations = 0, semantic = 0, dovetail_nodes = 0, events = 0;
  for (const auto& c : corpus) {
    const auto& u = c.space();
    const auto n = u.size();
    const auto ref = reference_of(c);
    for (ft::Mask r = 0; r <= all_mask(n); ++r) {
      const auto rs = ft::from_mask(u, r);
      if (!pairing_check(c, rs)) ++violations;
      // Library transformers against the independent reference.
      if (ft::to_mask(liberal_apply(c, rs)) != ref.liberal(r)) ++semantic;
      if (ft::to_mask(str_apply(c, rs)) != (ref.liberal(r) & ref.pre)) ++semantic;
    }
    for (auto kind : {TransformerKind::Str, TransformerKind::Liberal}) {
      const SetFunction fn(u, [&](const StateSet& r) { return apply(c, kind, r); });
      if (!monotone_check(fn, CheckMode::Exhaustive).monotone) ++violations;
    }
    std::vector<Command> ds;
    dovetails(c, ds);
    for (const auto& d : ds) {
      ++dovetail_nodes;
      if (!(grd_of(d) == (grd_of(d.left()) | grd_of(d.right())))) ++violations;
    }
  }
  ft::Rng rng(2);
  for (std::size_t i = 0; i < 520; ++i, ++events) {
    const auto e = ft::random_event(ft::make_space(1 + i % 6), rng, 2);
    if (!conjunctivity_check(e, 64).conjunctive) ++violations;
    if (!pre_of(e).is_full()) ++violations;
  }
  const double secs = seconds_since(t0);
  Outcome o;
  o.pass = violations == 0 && semantic == 0 && corpus.size() >= 500 && secs < 10.0;
  o.detail = std::to_string(corpus.size()) + " commands (" + std::to_string(dovetail_nodes) + " dovetail nodes), " +
             std::to_string(events) + " events; " + std::to_string(violations) + " law violations, " +
             std::to_string(semantic) + " disagreements with the reference semantics; " + fmt_seconds(secs);
  return o;
}

Outcome ac2() {
  const auto corpus = command_corpus(520, 1);
  std::size_t violations = 0;
  for (const auto& c : corpus) {
    const auto none = StateSet::empty(c.space()), full = StateSet::full(c.space());
    const auto lib = liberal_apply(c, none);
    if (!((lib & str_apply(c, none)) == (lib & str_apply(c, full)))) ++violations;
  }
  return {violations == 0, std::to_string(corpus.size()) + " commands, " + std::to_string(violations) + " violations"};
}

Outcome ac3() {
  ft::Rng rng(3);
  std::size_t violations = 0;
  const std::size_t count = 200;
  for (std::size_t i = 0; i < count; ++i) {
    const auto u = ft::make_space(1 + i % 8);
    const auto loop = ft::random_fair_loop(u, rng);
    if (!check_termination_lemma(loop).holds()) ++violations;
    // Termination set recomputed by unfolding X(q) once through the dovetail.
    const SetFunction unfold(u, [&](const StateSet& x) {
      const auto body = Command::seq(loop.rest(), Command::precond(x, Command::skip(u)));
      return pre_of(Command::guard(~loop.exit(), Command::dovetail(body, loop.helpful())));
    });
    const auto pre = lfp(unfold);
    if (!(grd_of(loop.helpful()) | loop.exit()).is_subset_of(pre)) ++violations;
    if (!(pre == loop_pre(loop))) ++violations;
  }
  return {violations == 0, std::to_string(count) + " loops, " + std::to_string(violations) + " violations"};
}

Outcome ac4() {
  ft::Rng rng(4);
  std::size_t violations = 0, multi = 0;
  const std::size_t count = 200;
  for (std::size_t i = 0; i < count; ++i) {
    const auto inst = ft::random_ensures_instance(2 + i % 5, 1 + i % 3, rng, i % 2 == 0);
    const auto pm = ft::to_mask(inst.p), qm = ft::to_mask(inst.q);
    if (!ft::predicate_wf0(inst.system, pm, qm) || !ft::predicate_wf1(inst.system, inst.helpful, pm, qm)) {
      ++violations;
      continue;
    }
    if (inst.helpful.size() > 1) ++multi;
    const auto split = split_system(inst.system, inst.helpful);
    const FairLoop loop(inst.q, split.helpful, split.rest);
    if (!(inst.p | inst.q).is_subset_of(loop_str(loop, inst.q))) ++violations;
    if (!check_ensures(inst.system, {"E", inst.helpful, inst.p, inst.q}).passed()) ++violations;
    const auto units = helpful_units(inst.system, inst.helpful);
    if (!semantic_leadsto(inst.system, inst.p, inst.q, units).holds) ++violations;
    if (!ft::brute_force_leadsto(inst.system, pm, qm, units)) ++violations;
  }
  return {violations == 0, std::to_string(count) + " instances (" + std::to_string(multi) +
                               " with several helpful events), " + std::to_string(violations) + " violations"};
}

Outcome ac5() {
  ft::Rng rng(5);
  std::size_t violations = 0, pairs = 0, chain_steps = 0;
  const std::size_t count = 200;
  for (std::size_t i = 0; i < count; ++i) {
    const auto n = 1 + i % 5;
    const auto u = ft::make_space(n);
    const auto loop = ft::random_fair_loop(u, rng);
    std::vector<StateSet> x(all_mask(n) + 1, StateSet::empty(u));
    for (ft::Mask s = 0; s <= all_mask(n); ++s) x[s] = loop_str(loop, ft::from_mask(u, s));
    for (ft::Mask t = 0; t <= all_mask(n); ++t)
      for (ft::Mask s = t;; s = (s - 1) & t) {
        ++pairs;
        if (!x[s].is_subset_of(x[t])) ++violations;
        if (s == 0) break;
      }
    const auto f0 = loop_functional(loop, StateSet::empty(u));
    const auto fix = lfp(f0);
    if (!(x[0] == fix)) ++violations;
    if (!(loop_guard(loop) == ~fix)) ++violations;
    // F(q)(∅)^(i+1)(∅) sits below the fixpoint and below X(q)(r) for every r,
    // and reaches the fixpoint once the chain stabilizes.
    StateSet prev = StateSet::empty(u);
    for (std::size_t k = 1;; ++k) {
      const auto c = iterate_chain(f0, k, StateSet::empty(u));
      ++chain_steps;
      if (!c.is_subset_of(fix)) ++violations;
      for (const auto& xr : x)
        if (!c.is_subset_of(xr)) ++violations;
      if (c == prev) {
        if (!(c == fix)) ++violations;
        break;
      }
      prev = c;
    }
  }
  return {violations == 0, std::to_string(count) + " loops, " + std::to_string(pairs) + " subset pairs, " +
                               std::to_string(chain_steps) + " chain steps, " + std::to_string(violations) +
                               " violations"};
}

Outcome ac6() {
  ft::Rng rng(6);
  std::size_t violations = 0, functions = 0;
  auto check = [&](const SetFunction& f) {
    ++functions;
    const auto& u = f.space();
    const auto fm = [&](ft::Mask m) { return ft::to_mask(f(ft::from_mask(u, m))); };
    if (ft::to_mask(lfp(f)) != ft::lfp_by_enumeration(fm, u.size())) ++violations;
    if (ft::to_mask(gfp(f)) != ft::gfp_by_enumeration(fm, u.size())) ++violations;
  };
  for (std::size_t i = 0; i < 300; ++i) {
    const auto u = ft::make_space(1 + i % 5);
    const auto loop = ft::random_fair_loop(u, rng);
    check(loop_functional(loop, ft::random_set(u, rng)));
    const auto c = ft::random_command(u, rng, 3);
    check(SetFunction(u, [c](const StateSet& r) { return str_apply(c, r); }));
    check(SetFunction(u, [c](const StateSet& r) { return liberal_apply(c, r); }));
    const auto a = ft::random_set(u, rng), b = ft::random_set(u, rng);
    const auto rel = ft::random_relation(u, rng);
    check(SetFunction(u, [a, b, rel](const StateSet& x) { return a | (b & rel.image(x)); }));
  }
  return {violations == 0, std::to_string(functions) + " monotone functions on spaces of size <= 5, " +
                               std::to_string(violations) + " violations"};
}

Outcome ac7(const Paths& paths) {
  ft::Rng rng(7);
  std::size_t accepted = 0, rejected_gate = 0, discrepancies = 0, attempts = 0;
  std::set<std::size_t> counters;
  while (accepted < 60 && attempts < 20000) {
    ++attempts;
    const auto g = ft::random_refinement_pair(rng);
    const auto& rp = g.pair;
    const auto& prop = g.property;
    bool ok = check_ensures(rp.abstract_system(), prop).passed();
    for (const auto& r : check_refinement(rp)) ok = ok && r.passed();
    for (const auto& r : derived_inclusions(rp, prop)) ok = ok && r.passed();
    ok = ok && check_sap(rp, prop).passed();
    const auto goal = lip_goal(rp, prop);
    const auto sets = refined_sets(rp, prop);
    const auto& con = rp.concrete_system();
    const auto units = helpful_units(con, sets.helpful_labels);
    const bool lip = semantic_leadsto(con, goal.lhs, goal.rhs, units).holds;
    const auto report = check_refined_ensures(rp, prop, {LipEvidence::Kind::Oracle, goal, lip, "oracle"});
    if (!ok || !lip) {
      ++rejected_gate;
      if (report.verdict != Verdict::HypothesisFailed) ++discrepancies;
      continue;
    }
    ++accepted;
    counters.insert(g.counter_size);
    if (!report.passed()) ++discrepancies;
    // The conclusions, re-derived independently on the concrete system.
    const EnsuresProperty concrete{"E'", sets.helpful_labels, sets.p & sets.guard, sets.q};
    const auto pm = ft::to_mask(sets.p), gm = ft::to_mask(sets.guard), qm = ft::to_mask(sets.q);
    if (!ft::predicate_wf0(con, pm & gm, qm) || !ft::predicate_wf1(con, concrete.helpful, pm & gm, qm))
      ++discrepancies;
    if (!semantic_leadsto(con, sets.p & sets.guard, sets.q, units).holds) ++discrepancies;
    if (!semantic_leadsto(con, sets.p, sets.q, units).holds) ++discrepancies;
    if (!ft::brute_force_leadsto(con, pm, qm, units)) ++discrepancies;
  }

  // A SAP-violating refinement: inc2 also clears b, so it can disable done2.
  bool sap_rejected = false;
  std::string sap_note = "SAP-violating pair not rejected";
  {
    std::ifstream in(paths.models + "/ctr.fb");
    std::stringstream ss;
    ss << in.rdbuf();
    auto text = ss.str();
    const std::string from = "    y := 3 - y\n  end\n  event arm";
    const auto at = text.find(from);
    if (at != std::string::npos) {
      text.replace(at, from.size(), "    y := 3 - y || b := 0\n  end\n  event arm");
      auto parsed = dsl::parse_document(text);
      if (parsed.ok()) {
        const auto m = dsl::elaborate(*parsed.document);
        const auto* rp = m.find_pair("CTR2");
        const auto* p1 = m.find_property("P1");
        if (rp && p1) {
          const auto prop = p1->as_ensures();
          const auto goal = lip_goal(*rp, prop);
          const auto sap = check_sap(*rp, prop);
          const auto r = check_refined_ensures(*rp, prop, {LipEvidence::Kind::Oracle, goal, true, "oracle"});
          std::string ws;
          for (const auto& w : sap.witnesses) ws += (ws.empty() ? "" : "; ") + m.render_state(w.space, w.state);
          sap_rejected = r.verdict == Verdict::HypothesisFailed && !sap.passed() && !sap.witnesses.empty();
          sap_note = "SAP-violating pair rejected with witnesses {" + ws + "}";
        }
      }
    }
  }
  Outcome o;
  o.pass = accepted >= 50 && discrepancies == 0 && sap_rejected && counters.size() > 1;
  o.detail = std::to_string(accepted) + " pairs accepted (" + std::to_string(rejected_gate) +
             " rejected by the hypotheses), " + std::to_string(discrepancies) + " discrepancies; " + sap_note;
  return o;
}

Outcome ac8(const Paths& paths) {
  ft::Rng rng(8);
  std::size_t steps = 0, violations = 0, rejected = 0;
  for (int k = 0; steps < 300 && k < 500; ++k) {
    ProofEnv env(ft::random_system(2 + k % 4, 1 + k % 3, rng));
    const auto fuzz = ft::fuzz_steps(env, rng, 40);
    rejected += fuzz.rejected;
    for (const auto& c : fuzz.accepted) {
      ++steps;
      if (!semantic_leadsto(env.system(), c.lhs, c.rhs).holds) ++violations;
      if (!ft::brute_force_leadsto(env.system(), ft::to_mask(c.lhs), ft::to_mask(c.rhs))) ++violations;
    }
  }

  std::string lemma = "derivation not found";
  bool lemma_ok = false;
  std::ifstream in(paths.models + "/ctr.fb");
  std::stringstream ss;
  ss << in.rdbuf();
  auto parsed = dsl::parse_document(ss.str());
  if (parsed.ok()) {
    const auto m = dsl::elaborate(*parsed.document);
    if (const auto* proof = m.find_proof("RefinedPc")) {
      ProofEnv env(m.find_scope(proof->scope)->system);
      for (const auto& p : m.properties) {
        if (p.scope != proof->scope) continue;
        if (p.kind == dsl::PropertyDecl::Kind::Ensures) env.add_ensures(p.as_ensures());
        if (p.kind == dsl::PropertyDecl::Kind::Unless) env.add_unless(p.as_unless());
      }
      const auto goal = m.find_property(proof->goal)->as_leadsto();
      const auto res = check_script(env, proof->script, goal);
      lemma_ok = res.passed && proof->script.steps.size() == 15;
      lemma = std::to_string(proof->script.steps.size()) + "-step derivation " + (res.passed ? "passes" : "fails");
      if (!res.passed) lemma += ": " + res.message;
    }
  }
  return {steps >= 200 && violations == 0 && lemma_ok,
          std::to_string(steps) + " accepted steps (" + std::to_string(rejected) + " proposals rejected), " +
              std::to_string(violations) + " violations; " + lemma};
}

// Systems with `events` events on `n` states, one per multiset of relations.
template <typename Fn>
void for_each_system(std::size_t n, std::size_t events, Fn&& fn) {
  const std::size_t rels = std::size_t{1} << (n * n);
  const auto u = ft::make_space(n);
  std::vector<Command> cmds;
  cmds.reserve(rels);
  for (std::size_t r = 0; r < rels; ++r) {
    std::vector<StateRelation::Pair> pairs;
    for (std::size_t b = 0; b < n * n; ++b)
      if ((r >> b) & 1U) pairs.emplace_back(b / n, b % n);
    StateRelation rel(u, u, pairs);
    cmds.push_back(Command::guard(rel.domain(), Command::prim(rel)));
  }
  std::vector<std::size_t> idx(events, 0);
  while (true) {
    std::vector<Event> es;
    for (std::size_t i = 0; i < events; ++i) es.push_back({"e" + std::to_string(i), cmds[idx[i]]});
    fn(EventSystem("u", u, std::move(es)));
    // Next non-decreasing index tuple.
    std::size_t pos = events;
    while (pos > 0 && idx[pos - 1] == rels - 1) --pos;
    if (pos == 0) break;
    ++idx[pos - 1];
    for (std::size_t i = pos; i < events; ++i) idx[i] = idx[pos - 1];
  }
}

Outcome ac9() {
  const auto t0 = Clock::now();
  std::size_t systems = 0, queries = 0, disagreements = 0;
  auto compare_all = [&](const EventSystem& sys) {
    ++systems;
    const auto n = sys.space().size();
    for (ft::Mask q = 0; q <= all_mask(n); ++q) {
      const auto bad = ft::brute_force_bad_states(sys, q);
      const auto qs = ft::from_mask(sys.space(), q);
      for (ft::Mask p = 0; p <= all_mask(n); ++p) {
        ++queries;
        const bool expected = (p & ~q & bad) == 0;
        if (semantic_leadsto(sys, ft::from_mask(sys.space(), p), qs).holds != expected) ++disagreements;
      }
    }
  };
  // Complete enumeration where it is feasible.
  for (std::size_t n = 1; n <= 2; ++n)
    for (std::size_t m = 1; m <= 3; ++m) for_each_system(n, m, compare_all);
  for (std::size_t m = 1; m <= 2; ++m) for_each_system(3, m, compare_all);
  for_each_system(4, 1, compare_all);
  const auto enumerated = systems;
  // Random systems for the remaining shapes.
  ft::Rng rng(9);
  std::size_t sampled = 0;
  for (std::size_t i = 0; i < 20000; ++i, ++sampled) {
    const std::size_t n = 3 + i % 3, m = n == 3 ? 3 : (n == 4 ? 2 + (i / 3) % 2 : 1 + (i / 3) % 3);
    compare_all(ft::random_system(n, m, rng));
  }
  Outcome o;
  o.pass = false;
  o.unattainable =
      "complete enumeration up to 5 states and 3 events covers about 6e21 systems (2^25 relations per event)";
  o.detail = std::to_string(enumerated) + " systems enumerated completely (n <= 2 with <= 3 events, n = 3 with <= 2 "
             "events, n = 4 with 1 event), " + std::to_string(sampled) + " random systems up to n = 5; " + std::to_string(queries) +
             " queries, " + std::to_string(disagreements) + " disagreements; " + fmt_seconds(seconds_since(t0));
  if (disagreements != 0) o.unattainable.clear();  // a real disagreement is a plain failure
  return o;
}

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& cmd) {
  Run r;
  FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string quote(const std::string& s) { return "'" + s + "'"; }

Outcome ac10(const Paths& paths) {
  if (paths.cli.empty()) return {false, "no CLI binary given"};
  if (paths.python.empty()) return {false, "no Python interpreter available to validate the schema"};
  const auto ctr = paths.models + "/ctr.fb";
  const auto leak = paths.models + "/ctr_leak.fb";
  const std::vector<std::pair<std::string, std::string>> runs{
      {"check", "check " + quote(ctr)},
      {"refine", "refine " + quote(ctr) + " --pair CTR2"},
      {"prove", "prove " + quote(ctr) + " --script RefinedPc"},
      {"oracle", "oracle " + quote(ctr) + " --property P1"},
  };
  const auto tmp = std::filesystem::temp_directory_path() / ("fairb_acceptance_" + std::to_string(::getpid()));
  std::filesystem::create_directories(tmp);
  std::vector<std::string> problems;
  auto validate = [&](const std::string& name, const std::string& json) {
    const auto file = tmp / (name + ".json");
    std::ofstream(file) << json;
    const auto v = run(quote(paths.python) + " " + quote(paths.validator) + " " + quote(paths.schema) + " " +
                       quote(file.string()));
    if (v.code != 0) problems.push_back(name + ": schema validation failed " + v.out);
  };
  for (const auto& [name, args] : runs) {
    const auto r = run(quote(paths.cli) + " --format json " + args);
    if (r.code != 0) problems.push_back(name + " exited " + std::to_string(r.code));
    validate(name, r.out);
  }
  const auto r = run(quote(paths.cli) + " --format json check " + quote(leak));
  if (r.code != 1) problems.push_back("leak check exited " + std::to_string(r.code));
  validate("leak", r.out);
  bool witness = false;
  try {
    const auto doc = nlohmann::json::parse(r.out);
    for (const auto& ob : doc.at("obligations"))
      if (ob.at("id") == "WF0" && ob.at("verdict") == "fail")
        for (const auto& w : ob.at("witnesses"))
          if (w.at("state") == "x=2") witness = true;
  } catch (const std::exception& e) {
    problems.push_back(std::string("leak report is not JSON: ") + e.what());
  }
  if (!witness) problems.push_back("leak report has no WF0 witness x=2");
  std::filesystem::remove_all(tmp);
  std::string detail = "check/refine/prove/oracle exit 0 with schema-valid JSON; leak variant exits 1 with WF0 witness x=2";
  if (!problems.empty()) {
    detail.clear();
    for (const auto& p : problems) detail += (detail.empty() ? "" : "; ") + p;
  }
  return {problems.empty(), detail};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fairb acceptance checks"};
  Paths paths;
  std::vector<int> only;
  app.add_option("--cli", paths.cli, "fairb binary");
  app.add_option("--models", paths.models, "Directory with ctr.fb and ctr_leak.fb")->required();
  app.add_option("--schema", paths.schema, "Report schema");
  app.add_option("--validator", paths.validator, "Schema validation script");
  app.add_option("--python", paths.python, "Python interpreter with jsonschema");
  app.add_option("--only", only, "Run only these criteria");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"AC1 transformer laws", ac1},
      {"AC2 dovetail note", ac2},
      {"AC3 termination lemma", ac3},
      {"AC4 total correctness lemma", ac4},
      {"AC5 fair loop monotony and guard", ac5},
      {"AC6 fixpoint duality", ac6},
      {"AC7 refinement soundness", [&] { return ac7(paths); }},
      {"AC8 UNITY soundness", [&] { return ac8(paths); }},
      {"AC9 oracle self-check", ac9},
      {"AC10 end-to-end CLI", [&] { return ac10(paths); }},
  };
  int hard_failures = 0, passed = 0, run_count = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (!only.empty() && std::find(only.begin(), only.end(), static_cast<int>(i + 1)) == only.end()) continue;
    ++run_count;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << criteria[i].first << ": " << o.detail;
    if (!o.pass && !o.unattainable.empty()) std::cout << " (unattainable as stated: " << o.unattainable << ")";
    std::cout << std::endl;
    if (o.pass) ++passed;
    else if (o.unattainable.empty()) ++hard_failures;
  }
  std::cout << passed << "/" << run_count << " criteria pass" << std::endl;
  return hard_failures == 0 ? 0 : 1;
}
