#include "fairb/oracle.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <set>

#include "fairb/error.hpp"

namespace fairb {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

struct Edge {
  std::size_t target;
  std::size_t event;
};

struct Graph {
  const EventSystem& sys;
  std::vector<std::size_t> unit_of;             // event -> unit
  std::vector<std::vector<std::size_t>> units;  // unit -> events
  StateSet avoid;                               // ~q

  bool enabled(std::size_t event, std::size_t s) const { return !sys.transitions(event).successors(s).empty(); }

  bool unit_enabled(std::size_t unit, std::size_t s) const {
    return std::any_of(units[unit].begin(), units[unit].end(), [&](std::size_t e) { return enabled(e, s); });
  }

  template <typename Fn>
  void for_each_edge(std::size_t s, Fn&& fn) const {
    for (std::size_t e = 0; e < sys.events().size(); ++e)
      for (auto t : sys.transitions(e).successors(s)) fn(Edge{t, e});
  }
};

std::vector<std::string> unit_labels(const Graph& g, std::size_t unit) {
  std::vector<std::string> out;
  for (auto e : g.units[unit]) out.push_back(g.sys.events()[e].label);
  return out;
}

// Shortest path from `from` to `to` through `allowed`, as states and the
// events between them. Requires at least one step when from == to.
bool path_within(const Graph& g, const std::vector<char>& allowed, std::size_t from, std::size_t to,
                 std::vector<std::size_t>& states, std::vector<std::string>& events) {
  const auto n = g.sys.space().size();
  std::vector<std::size_t> parent(n, kNone), via(n, kNone);
  std::vector<char> seen(n, 0);
  std::deque<std::size_t> queue;
  // Seed with the successors of `from` so that a closed walk has length >= 1.
  std::size_t reached = kNone;
  auto visit = [&](std::size_t s, std::size_t t, std::size_t e) {
    if (!allowed[t] || seen[t]) return;
    seen[t] = 1;
    parent[t] = s;
    via[t] = e;
    if (t == to && reached == kNone) reached = t;
    queue.push_back(t);
  };
  g.for_each_edge(from, [&](Edge ed) { visit(from, ed.target, ed.event); });
  while (!queue.empty() && reached == kNone) {
    const auto s = queue.front();
    queue.pop_front();
    g.for_each_edge(s, [&](Edge ed) { visit(s, ed.target, ed.event); });
  }
  if (reached == kNone) return false;
  std::vector<std::size_t> rev_states;
  std::vector<std::string> rev_events;
  for (std::size_t cur = to;;) {
    rev_events.push_back(g.sys.events()[via[cur]].label);
    const auto prev = parent[cur];
    if (prev == from) break;
    rev_states.push_back(prev);
    cur = prev;
  }
  // `states` already ends with `from`; append the intermediate states.
  states.insert(states.end(), rev_states.rbegin(), rev_states.rend());
  events.insert(events.end(), rev_events.rbegin(), rev_events.rend());
  states.push_back(to);
  return true;
}

// Extends a walk that ends at `at` so that it ends at `to`; a no-op when
// already there.
void walk_to(const Graph& g, const std::vector<char>& allowed, std::vector<std::size_t>& states,
             std::vector<std::string>& events, std::size_t to) {
  if (states.back() == to) return;
  const auto from = states.back();
  if (!path_within(g, allowed, from, to, states, events)) throw Error("oracle: component is not strongly connected");
  // path_within appended `to` after the intermediates; `from` was already there.
}

void step_along(std::vector<std::size_t>& states, std::vector<std::string>& events, std::size_t to,
                const std::string& label) {
  events.push_back(label);
  states.push_back(to);
}

}  // namespace

FairnessUnits helpful_units(const EventSystem& sys, const std::vector<std::string>& helpful) {
  FairnessUnits units{helpful};
  for (const auto& e : sys.events())
    if (std::find(helpful.begin(), helpful.end(), e.label) == helpful.end()) units.push_back({e.label});
  return units;
}

OracleResult semantic_leadsto(const EventSystem& sys, const StateSet& p, const StateSet& q,
                              const FairnessUnits& units) {
  require_same_space(sys.space(), p.space());
  require_same_space(sys.space(), q.space());
  const auto n = sys.space().size();
  const auto event_count = sys.events().size();

  Graph g{sys, std::vector<std::size_t>(event_count, kNone), {}, ~q};
  for (const auto& unit : units) {
    if (unit.empty()) continue;
    std::vector<std::size_t> members;
    for (const auto& label : unit) {
      const auto e = sys.index_of(label);
      if (g.unit_of[e] != kNone) throw InvalidModel("event '" + label + "' appears in two fairness units");
      g.unit_of[e] = g.units.size();
      members.push_back(e);
    }
    g.units.push_back(std::move(members));
  }
  for (std::size_t e = 0; e < event_count; ++e) {
    if (g.unit_of[e] != kNone) continue;
    g.unit_of[e] = g.units.size();
    g.units.push_back({e});
  }

  OracleResult result;
  const auto start = p - q;
  if (start.is_empty()) return result;

  // Multi-source BFS over ~q.
  std::vector<std::size_t> parent(n, kNone), via(n, kNone), order;
  std::vector<char> reach(n, 0);
  std::deque<std::size_t> queue;
  start.for_each([&](std::size_t s) {
    reach[s] = 1;
    queue.push_back(s);
  });
  while (!queue.empty()) {
    const auto s = queue.front();
    queue.pop_front();
    order.push_back(s);
    g.for_each_edge(s, [&](Edge ed) {
      if (!g.avoid.contains(ed.target) || reach[ed.target]) return;
      reach[ed.target] = 1;
      parent[ed.target] = s;
      via[ed.target] = ed.event;
      queue.push_back(ed.target);
    });
  }
  result.explored = order.size();

  auto stem_to = [&](std::size_t target, FairLasso& lasso) {
    std::vector<std::size_t> rev;
    std::vector<std::string> rev_ev;
    for (auto cur = target; parent[cur] != kNone; cur = parent[cur]) {
      rev.push_back(parent[cur]);
      rev_ev.push_back(sys.events()[via[cur]].label);
    }
    lasso.stem.assign(rev.rbegin(), rev.rend());
    lasso.stem_events.assign(rev_ev.rbegin(), rev_ev.rend());
  };

  // A reachable deadlock stops the run short of q.
  for (auto s : order) {
    bool any = false;
    for (std::size_t e = 0; e < event_count && !any; ++e) any = g.enabled(e, s);
    if (any) continue;
    FairLasso lasso;
    stem_to(s, lasso);
    lasso.cycle = {s};
    lasso.cycle_events = {""};
    lasso.deadlock = true;
    for (std::size_t u = 0; u < g.units.size(); ++u)
      lasso.justifications.push_back({unit_labels(g, u), Justification::Kind::Disabled, s, std::nullopt, std::nullopt});
    result.holds = false;
    result.lasso = std::move(lasso);
    return result;
  }

  // Iterative Tarjan over the reachable part of ~q.
  std::vector<std::size_t> index(n, kNone), low(n, 0), comp(n, kNone);
  std::vector<char> on_stack(n, 0);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> components;
  std::size_t counter = 0;
  struct Frame {
    std::size_t s;
    std::vector<std::size_t> succ;
    std::size_t next = 0;
  };
  auto successors_in = [&](std::size_t s) {
    std::vector<std::size_t> out;
    g.for_each_edge(s, [&](Edge ed) {
      if (reach[ed.target]) out.push_back(ed.target);
    });
    return out;
  };
  for (auto root : order) {
    if (index[root] != kNone) continue;
    std::vector<Frame> frames;
    auto open = [&](std::size_t s) {
      index[s] = low[s] = counter++;
      stack.push_back(s);
      on_stack[s] = 1;
      frames.push_back({s, successors_in(s)});
    };
    open(root);
    while (!frames.empty()) {
      auto& f = frames.back();
      if (f.next < f.succ.size()) {
        const auto t = f.succ[f.next++];
        if (index[t] == kNone) {
          open(t);
        } else if (on_stack[t]) {
          low[f.s] = std::min(low[f.s], index[t]);
        }
        continue;
      }
      const auto s = f.s;
      frames.pop_back();
      if (!frames.empty()) low[frames.back().s] = std::min(low[frames.back().s], low[s]);
      if (low[s] != index[s]) continue;
      std::vector<std::size_t> members;
      std::size_t t;
      do {
        t = stack.back();
        stack.pop_back();
        on_stack[t] = 0;
        comp[t] = components.size();
        members.push_back(t);
      } while (t != s);
      components.push_back(std::move(members));
    }
  }

  // Components in discovery order of their earliest BFS state keep the
  // reported lasso stable.
  std::vector<std::size_t> comp_order;
  {
    std::vector<char> listed(components.size(), 0);
    for (auto s : order)
      if (!listed[comp[s]]) {
        listed[comp[s]] = 1;
        comp_order.push_back(comp[s]);
      }
  }

  for (auto c : comp_order) {
    const auto& members = components[c];
    std::vector<char> inside(n, 0);
    for (auto s : members) inside[s] = 1;
    bool has_edge = false;
    std::vector<std::optional<Justification>> just(g.units.size());
    for (auto s : members) {
      for (std::size_t u = 0; u < g.units.size(); ++u)
        if (!just[u] && !g.unit_enabled(u, s))
          just[u] = Justification{unit_labels(g, u), Justification::Kind::Disabled, s, std::nullopt, std::nullopt};
      g.for_each_edge(s, [&](Edge ed) {
        if (!inside[ed.target]) return;
        has_edge = true;
        const auto u = g.unit_of[ed.event];
        if (!just[u])
          just[u] = Justification{unit_labels(g, u), Justification::Kind::Taken, s, ed.target,
                                  sys.events()[ed.event].label};
      });
    }
    if (!has_edge) continue;
    if (std::any_of(just.begin(), just.end(), [](const auto& j) { return !j.has_value(); })) continue;

    // Fair component: walk through every justification and close the cycle.
    FairLasso lasso;
    const auto entry = *std::min_element(members.begin(), members.end(),
                                         [&](auto a, auto b) { return index[a] < index[b]; });
    std::size_t anchor = entry;
    for (auto s : order)
      if (inside[s]) {
        anchor = s;
        break;
      }
    stem_to(anchor, lasso);
    std::vector<std::size_t> walk{anchor};
    std::vector<std::string> walk_events;
    for (const auto& j : just) {
      walk_to(g, inside, walk, walk_events, j->state);
      if (j->kind == Justification::Kind::Taken) step_along(walk, walk_events, *j->target, *j->event);
    }
    if (walk.size() == 1) {
      if (!path_within(g, inside, anchor, anchor, walk, walk_events)) throw Error("oracle: no closed walk");
    } else {
      walk_to(g, inside, walk, walk_events, anchor);
    }
    walk.pop_back();  // the closing state repeats the anchor
    lasso.cycle = std::move(walk);
    lasso.cycle_events = std::move(walk_events);
    for (auto& j : just) lasso.justifications.push_back(std::move(*j));
    result.holds = false;
    result.lasso = std::move(lasso);
    return result;
  }
  return result;
}

}  // namespace fairb
