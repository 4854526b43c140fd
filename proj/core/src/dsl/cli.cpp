#include "fairb/dsl/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "fairb/dsl/elaborate.hpp"
#include "fairb/dsl/parser.hpp"
#include "fairb/dsl/report.hpp"
#include "fairb/obligations.hpp"
#include "fairb/oracle.hpp"
#include "fairb/proof.hpp"

namespace fairb::dsl {

namespace {

struct Settings {
  std::string file;
  std::string pair;
  std::string script;
  std::string property;
  std::string format = "text";
  bool exhaustive = false;
  std::size_t samples = 64;
  std::size_t max_states = std::size_t{1} << 20;
  std::uint64_t seed = 0;

  RefinementCheckOptions refinement() const { return {exhaustive, samples, seed}; }
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const Scope& scope_of(const Model& m, const std::string& name) {
  const auto* s = m.find_scope(name);
  if (!s) throw UsageError("unknown scope '" + name + "'");
  return *s;
}

void run_check(const Model& m, std::vector<ObligationReport>& out) {
  for (const auto& p : m.properties) {
    const auto& sys = scope_of(m, p.scope).system;
    if (p.kind == PropertyDecl::Kind::Ensures) {
      const auto prop = p.as_ensures();
      out.push_back(check_wf0(sys, prop));
      out.push_back(check_wf1(sys, prop));
      out.push_back(check_ensures(sys, prop));
    } else if (p.kind == PropertyDecl::Kind::Unless) {
      out.push_back(check_unless(sys, p.as_unless()));
    }
  }
}

ProofEnv proof_env(const Model& m, const std::string& scope) {
  ProofEnv env(scope_of(m, scope).system);
  for (const auto& p : m.properties) {
    if (p.scope != scope) continue;
    if (p.kind == PropertyDecl::Kind::Ensures) env.add_ensures(p.as_ensures());
    if (p.kind == PropertyDecl::Kind::Unless) env.add_unless(p.as_unless());
  }
  return env;
}

OracleResult oracle_for(const Model& m, const ElabProperty& p) {
  const auto& sys = scope_of(m, p.scope).system;
  const auto units = p.kind == PropertyDecl::Kind::Ensures ? helpful_units(sys, p.helpful) : FairnessUnits{};
  return semantic_leadsto(sys, p.from, p.to, units);
}

void attach_lasso(ObligationReport& r, const EventSystem& sys, const OracleResult& res) {
  if (!res.lasso) return;
  r.lasso = res.lasso;
  for (auto s : res.lasso->cycle) r.witnesses.push_back({sys.space(), s, "on a fair run that avoids the target"});
}

ObligationReport run_proof(const Model& m, const ElabProof& proof) {
  const auto* goal = m.find_property(proof.goal);
  const auto env = proof_env(m, proof.scope);
  const auto result = check_script(env, proof.script, goal->as_leadsto());
  ObligationReport r;
  r.id = "PROOF";
  r.subject = proof.name;
  r.refs = {proof.goal};
  r.narrative = result.message;
  r.goal = LeadsTo{goal->name, goal->from, goal->to};
  if (result.passed) return r;
  r.verdict = Verdict::Fail;
  const auto& sys = env.system();
  auto oracle = oracle_for(m, *goal);
  if (!oracle.holds) {
    r.narrative += "; the goal itself is refuted";
    attach_lasso(r, sys, oracle);
  } else {
    (goal->from - goal->to).for_each([&](std::size_t s) { r.witnesses.push_back({sys.space(), s, "goal source not covered by the script"}); });
    if (r.witnesses.empty()) goal->from.for_each([&](std::size_t s) { r.witnesses.push_back({sys.space(), s, "goal source"}); });
  }
  return r;
}

void run_refine(const Model& m, const RefinementPair& rp, const Settings& st, std::vector<ObligationReport>& out) {
  for (auto& r : check_refinement(rp, st.refinement())) out.push_back(std::move(r));
  const auto& abstract_name = rp.abstract_system().name();
  for (const auto& p : m.properties) {
    if (p.scope != abstract_name || p.kind != PropertyDecl::Kind::Ensures) continue;
    const auto prop = p.as_ensures();
    out.push_back(check_sap(rp, prop));
    for (auto& r : derived_inclusions(rp, prop, st.refinement())) out.push_back(std::move(r));

    const auto goal = lip_goal(rp, prop);
    LipEvidence evidence{LipEvidence::Kind::Oracle, goal, false, "oracle"};
    for (const auto& proof : m.proofs) {
      if (proof.scope != rp.name()) continue;
      const auto* g = m.find_property(proof.goal);
      if (!(g->from == goal.lhs && g->to == goal.rhs)) continue;
      if (check_script(proof_env(m, proof.scope), proof.script, g->as_leadsto()).passed) {
        evidence = {LipEvidence::Kind::Script, goal, true, proof.name};
        break;
      }
    }
    ObligationReport lip;
    lip.id = "LIP-goal";
    lip.subject = prop.name;
    lip.goal = goal;
    if (evidence.discharged) {
      lip.refs = {prop.name, "script:" + evidence.source};
      lip.narrative = "discharged by proof '" + evidence.source + "'";
    } else {
      const auto sets = refined_sets(rp, prop);
      const auto res = semantic_leadsto(rp.concrete_system(), goal.lhs, goal.rhs,
                                        helpful_units(rp.concrete_system(), sets.helpful_labels));
      evidence.discharged = res.holds;
      lip.refs = {prop.name, "oracle"};
      if (res.holds) {
        lip.narrative = "discharged by the fair-execution oracle";
      } else {
        lip.verdict = Verdict::Fail;
        lip.narrative = "the fair-execution oracle refutes the goal";
        attach_lasso(lip, rp.concrete_system(), res);
      }
    }
    out.push_back(std::move(lip));
    out.push_back(check_refined_ensures(rp, prop, evidence, st.refinement()));
  }
}

ObligationReport run_oracle(const Model& m, const ElabProperty& p) {
  if (p.kind == PropertyDecl::Kind::Unless) throw UsageError("property '" + p.name + "' is not a progress property");
  const auto res = oracle_for(m, p);
  ObligationReport r;
  r.id = "ORACLE";
  r.subject = p.name;
  r.refs = {p.name};
  r.goal = p.as_leadsto();
  if (res.holds) {
    r.narrative = "every weakly-fair run from the source reaches the target (" + std::to_string(res.explored) +
                  " states explored)";
  } else {
    r.verdict = Verdict::Fail;
    r.narrative = res.lasso && res.lasso->deadlock ? "a reachable deadlock avoids the target"
                                                   : "a weakly-fair cycle avoids the target";
    attach_lasso(r, scope_of(m, p.scope).system, res);
  }
  return r;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite-state checker for event systems under weak fairness", "fairb"};
  app.require_subcommand(1);
  Settings st;
  app.add_flag("--exhaustive", st.exhaustive, "Enumerate every concrete subset in refinement checks (up to 18 states)");
  app.add_option("--samples", st.samples, "Random subsets per refinement check above the exhaustive limit");
  app.add_option("--max-states", st.max_states, "Largest state space elaboration will build");
  app.add_option("--format", st.format, "Report format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", st.seed, "Seed for sampled checks");

  auto* check = app.add_subcommand("check", "Check every ensures and unless property");
  auto* refine = app.add_subcommand("refine", "Check refinement conditions, SAP, LIP and refined ensures");
  auto* prove = app.add_subcommand("prove", "Check a leads-to proof script");
  auto* oracle = app.add_subcommand("oracle", "Decide a progress property on fair executions");
  auto* report = app.add_subcommand("report", "Run every check");
  for (auto* sub : {check, refine, prove, oracle, report}) {
    sub->fallthrough();
    sub->add_option("file", st.file, "Model file")->required();
  }
  refine->add_option("--pair", st.pair, "Refinement name")->required();
  prove->add_option("--script", st.script, "Proof name")->required();
  oracle->add_option("--property", st.property, "Property name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  std::string text;
  try {
    text = read_file(st.file);
  } catch (const UsageError& e) {
    err << "fairb: " << e.what() << '\n';
    return 2;
  }
  auto parsed = parse_document(text);
  if (!parsed.ok()) {
    for (const auto& d : parsed.diagnostics) err << st.file << ':' << d.to_string() << '\n';
    return 2;
  }

  try {
    const auto model = elaborate(*parsed.document, {st.max_states, 64});
    std::vector<ObligationReport> reports;
    if (check->parsed()) {
      run_check(model, reports);
    } else if (refine->parsed()) {
      const auto* rp = model.find_pair(st.pair);
      if (!rp) throw UsageError("unknown refinement '" + st.pair + "'");
      run_refine(model, *rp, st, reports);
    } else if (prove->parsed()) {
      const auto* proof = model.find_proof(st.script);
      if (!proof) throw UsageError("unknown proof '" + st.script + "'");
      reports.push_back(run_proof(model, *proof));
    } else if (oracle->parsed()) {
      const auto* p = model.find_property(st.property);
      if (!p) throw UsageError("unknown property '" + st.property + "'");
      reports.push_back(run_oracle(model, *p));
    } else {
      run_check(model, reports);
      for (const auto& rp : model.pairs) run_refine(model, rp, st, reports);
      for (const auto& proof : model.proofs) reports.push_back(run_proof(model, proof));
      for (const auto& p : model.properties)
        if (p.kind != PropertyDecl::Kind::Unless) reports.push_back(run_oracle(model, p));
    }
    out << (st.format == "json" ? render_json(model, st.file, reports) : render_text(model, st.file, reports));
    return tally(reports).all_passed() ? 0 : 1;
  } catch (const ElaborationError& e) {
    err << st.file << ':' << e.diagnostic().to_string() << '\n';
  } catch (const UsageError& e) {
    err << "fairb: " << e.what() << '\n';
  } catch (const Error& e) {
    err << "fairb: " << e.what() << '\n';
  }
  return 2;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace fairb::dsl
