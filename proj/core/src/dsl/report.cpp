#include "fairb/dsl/report.hpp"

#include <json.hpp>
#include <sstream>

namespace fairb::dsl {

Tally tally(const std::vector<ObligationReport>& reports) {
  Tally t;
  for (const auto& r : reports) {
    switch (r.verdict) {
      case Verdict::Pass: ++t.pass; break;
      case Verdict::Fail: ++t.fail; break;
      case Verdict::HypothesisFailed: ++t.hypothesis_failed; break;
    }
  }
  return t;
}

namespace {

using json = nlohmann::ordered_json;

std::string render_set(const Model& model, const StateSet& s) {
  std::string out = "{";
  bool first = true;
  s.for_each([&](std::size_t i) {
    out += (first ? "" : "; ") + model.render_state(s.space(), i);
    first = false;
  });
  return out + "}";
}

json set_json(const Model& model, const StateSet& s) {
  json arr = json::array();
  s.for_each([&](std::size_t i) { arr.push_back(model.render_state(s.space(), i)); });
  return arr;
}

json states_json(const Model& model, const StateSpace& space, const std::vector<std::size_t>& states) {
  json arr = json::array();
  for (auto s : states) arr.push_back(model.render_state(space, s));
  return arr;
}

json lasso_json(const Model& model, const StateSpace& space, const FairLasso& l) {
  json j;
  j["stem"] = states_json(model, space, l.stem);
  j["stem_events"] = l.stem_events;
  j["cycle"] = states_json(model, space, l.cycle);
  j["cycle_events"] = l.cycle_events;
  j["deadlock"] = l.deadlock;
  json just = json::array();
  for (const auto& x : l.justifications) {
    json e;
    e["events"] = x.events;
    e["kind"] = x.kind == Justification::Kind::Disabled ? "disabled" : "taken";
    e["state"] = model.render_state(space, x.state);
    if (x.target) e["target"] = model.render_state(space, *x.target);
    if (x.event) e["event"] = *x.event;
    just.push_back(std::move(e));
  }
  j["justifications"] = std::move(just);
  return j;
}

// The space of a lasso is the space of the report's witnesses or goal.
std::optional<StateSpace> report_space(const ObligationReport& r) {
  if (r.goal) return r.goal->lhs.space();
  for (const auto& w : r.witnesses) return w.space;
  return std::nullopt;
}

}  // namespace

std::string render_json(const Model& model, const std::string& model_name,
                        const std::vector<ObligationReport>& reports) {
  json root;
  root["version"] = kReportVersion;
  root["model"] = model_name;
  json obligations = json::array();
  for (const auto& r : reports) {
    json o;
    o["id"] = r.id;
    o["subject"] = r.subject;
    o["verdict"] = std::string(to_string(r.verdict));
    json ws = json::array();
    for (const auto& w : r.witnesses) {
      json wj;
      wj["state"] = model.render_state(w.space, w.state);
      json b = json::object();
      for (const auto& [name, value] : model.bindings(w.space, w.state)) b[name] = value;
      wj["bindings"] = std::move(b);
      wj["space"] = w.space.id();
      wj["role"] = w.role;
      ws.push_back(std::move(wj));
    }
    o["witnesses"] = std::move(ws);
    o["refs"] = r.refs;
    o["narrative"] = r.narrative;
    if (r.lasso) {
      if (auto space = report_space(r)) o["lasso"] = lasso_json(model, *space, *r.lasso);
    }
    if (r.goal) {
      json g;
      g["name"] = r.goal->name;
      g["lhs"] = set_json(model, r.goal->lhs);
      g["rhs"] = set_json(model, r.goal->rhs);
      o["goal"] = std::move(g);
    }
    obligations.push_back(std::move(o));
  }
  root["obligations"] = std::move(obligations);
  const auto t = tally(reports);
  root["summary"] = {{"total", t.total()}, {"pass", t.pass}, {"fail", t.fail}, {"hypothesis_failed", t.hypothesis_failed}};
  return root.dump(2) + "\n";
}

std::string render_text(const Model& model, const std::string& model_name,
                        const std::vector<ObligationReport>& reports) {
  std::ostringstream os;
  os << "fairb " << kReportVersion << "  model " << model_name << "  (" << model.total_states() << " states)\n";
  for (const auto& r : reports) {
    os << r.id << ' ' << r.subject << ": " << to_string(r.verdict);
    if (!r.narrative.empty()) os << "  " << r.narrative;
    os << '\n';
    for (const auto& w : r.witnesses)
      os << "    witness " << model.render_state(w.space, w.state) << "  (" << w.role << ")\n";
    if (r.goal)
      os << "    goal " << render_set(model, r.goal->lhs) << " ~> " << render_set(model, r.goal->rhs) << '\n';
    if (r.lasso) {
      const auto space = report_space(r);
      if (!space) continue;
      os << "    lasso stem:";
      for (auto s : r.lasso->stem) os << " [" << model.render_state(*space, s) << ']';
      os << "  cycle:";
      for (auto s : r.lasso->cycle) os << " [" << model.render_state(*space, s) << ']';
      if (r.lasso->deadlock) os << " (deadlock)";
      os << '\n';
      for (const auto& j : r.lasso->justifications) {
        os << "      {";
        for (std::size_t i = 0; i < j.events.size(); ++i) os << (i ? ", " : "") << j.events[i];
        if (j.kind == Justification::Kind::Disabled)
          os << "} disabled at " << model.render_state(*space, j.state) << '\n';
        else
          os << "} taken: " << *j.event << " from " << model.render_state(*space, j.state) << " to "
             << model.render_state(*space, *j.target) << '\n';
      }
    }
  }
  const auto t = tally(reports);
  os << "summary: " << t.total() << (t.total() == 1 ? " obligation, " : " obligations, ") << t.pass << " pass, " << t.fail << " fail, "
     << t.hypothesis_failed << " hypothesis-failed\n";
  return os.str();
}

}  // namespace fairb::dsl
