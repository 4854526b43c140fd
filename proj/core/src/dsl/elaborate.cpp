#include "fairb/dsl/elaborate.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace fairb::dsl {

const Scope* Model::find_scope(const std::string& name) const {
  for (const auto& s : scopes)
    if (s.name == name) return &s;
  return nullptr;
}

const RefinementPair* Model::find_pair(const std::string& name) const {
  for (const auto& p : pairs)
    if (p.name() == name) return &p;
  return nullptr;
}

const ElabProperty* Model::find_property(const std::string& name) const {
  for (const auto& p : properties)
    if (p.name == name) return &p;
  return nullptr;
}

const ElabProof* Model::find_proof(const std::string& name) const {
  for (const auto& p : proofs)
    if (p.name == name) return &p;
  return nullptr;
}

std::size_t Model::total_states() const {
  std::size_t n = 0;
  for (const auto& s : scopes) n += s.system.space().size();
  return n;
}

std::vector<std::pair<std::string, long>> Model::bindings(const StateSpace& space, std::size_t state) const {
  std::vector<std::pair<std::string, long>> out;
  auto it = valuations.find(space.id());
  if (it == valuations.end() || state >= it->second.rows.size()) return out;
  const auto& v = it->second;
  for (std::size_t i = 0; i < v.vars.size(); ++i) out.emplace_back(v.vars[i].name, v.rows[state][i]);
  return out;
}

std::string Model::render_state(const StateSpace& space, std::size_t state) const {
  const auto b = bindings(space, state);
  if (b.empty()) return space.label(state);
  std::string out;
  for (const auto& [name, value] : b) out += (out.empty() ? "" : ", ") + name + "=" + std::to_string(value);
  return out;
}

namespace {

enum class Type { Int, Bool };

struct Env {
  const long* vals = nullptr;
  std::size_t state = 0;
  std::size_t abstract_state = 0;
};

using Fn = std::function<long(const Env&)>;

struct Compiled {
  Fn fn;
  Type type = Type::Int;
  bool uses_abstract = false;
};

struct Context {
  std::map<std::string, std::size_t> slots;
  std::set<std::string> abstract_names;
  std::map<std::string, std::string> forbidden;  // name -> reason
  const std::map<std::string, StateSet>* grd_concrete = nullptr;
  const std::map<std::string, StateSet>* grd_abstract = nullptr;
};

const char* type_name(Type t) { return t == Type::Int ? "integer" : "boolean"; }

Compiled compile(const Expr& e, const Context& ctx);

Compiled typed(const Expr& e, const Context& ctx, Type want) {
  auto c = compile(e, ctx);
  if (c.type != want)
    throw ElaborationError(e.span, std::string("expected a ") + type_name(want) + " expression, found " +
                                       type_name(c.type));
  return c;
}

Compiled compile(const Expr& e, const Context& ctx) {
  using Op = Expr::Op;
  switch (e.op) {
    case Op::Int: return {[v = e.value](const Env&) { return v; }, Type::Int, false};
    case Op::Bool: return {[v = e.value](const Env&) { return v; }, Type::Bool, false};
    case Op::Var: {
      if (auto f = ctx.forbidden.find(e.name); f != ctx.forbidden.end()) throw ElaborationError(e.span, f->second);
      auto it = ctx.slots.find(e.name);
      if (it == ctx.slots.end()) throw ElaborationError(e.span, "unknown variable '" + e.name + "'");
      return {[slot = it->second](const Env& env) { return env.vals[slot]; }, Type::Int,
              ctx.abstract_names.count(e.name) != 0};
    }
    case Op::Grd: {
      if (!ctx.grd_concrete) throw ElaborationError(e.span, "grd(...) may only appear in properties and proofs");
      if (auto it = ctx.grd_concrete->find(e.name); it != ctx.grd_concrete->end())
        return {[set = it->second](const Env& env) -> long { return set.contains(env.state); }, Type::Bool, false};
      if (ctx.grd_abstract)
        if (auto it = ctx.grd_abstract->find(e.name); it != ctx.grd_abstract->end())
          return {[set = it->second](const Env& env) -> long { return set.contains(env.abstract_state); }, Type::Bool,
                  true};
      throw ElaborationError(e.span, "unknown event '" + e.name + "' in grd(...)");
    }
    case Op::Neg: {
      auto a = typed(e.args[0], ctx, Type::Int);
      return {[f = a.fn](const Env& env) { return -f(env); }, Type::Int, a.uses_abstract};
    }
    case Op::Not: {
      auto a = typed(e.args[0], ctx, Type::Bool);
      return {[f = a.fn](const Env& env) -> long { return !f(env); }, Type::Bool, a.uses_abstract};
    }
    case Op::In: {
      auto x = typed(e.args[0], ctx, Type::Int);
      std::vector<Fn> members;
      bool abs = x.uses_abstract;
      for (std::size_t i = 1; i < e.args.size(); ++i) {
        auto m = typed(e.args[i], ctx, Type::Int);
        abs = abs || m.uses_abstract;
        members.push_back(m.fn);
      }
      if (e.range)
        return {[x = x.fn, lo = members[0], hi = members[1]](const Env& env) -> long {
                  const auto v = x(env);
                  return lo(env) <= v && v <= hi(env);
                },
                Type::Bool, abs};
      return {[x = x.fn, members](const Env& env) -> long {
                const auto v = x(env);
                return std::any_of(members.begin(), members.end(), [&](const Fn& m) { return m(env) == v; });
              },
              Type::Bool, abs};
    }
    default: break;
  }
  const bool logical = e.op == Op::And || e.op == Op::Or || e.op == Op::Implies;
  const Type operand = logical ? Type::Bool : Type::Int;
  auto a = typed(e.args[0], ctx, operand);
  auto b = typed(e.args[1], ctx, operand);
  const bool abs = a.uses_abstract || b.uses_abstract;
  auto make = [&](auto op, Type result) {
    return Compiled{[fa = a.fn, fb = b.fn, op](const Env& env) -> long { return op(fa, fb, env); }, result, abs};
  };
  switch (e.op) {
    case Op::Add: return make([](const Fn& x, const Fn& y, const Env& v) { return x(v) + y(v); }, Type::Int);
    case Op::Sub: return make([](const Fn& x, const Fn& y, const Env& v) { return x(v) - y(v); }, Type::Int);
    case Op::Mul: return make([](const Fn& x, const Fn& y, const Env& v) { return x(v) * y(v); }, Type::Int);
    case Op::Eq: return make([](const Fn& x, const Fn& y, const Env& v) -> long { return x(v) == y(v); }, Type::Bool);
    case Op::Ne: return make([](const Fn& x, const Fn& y, const Env& v) -> long { return x(v) != y(v); }, Type::Bool);
    case Op::Lt: return make([](const Fn& x, const Fn& y, const Env& v) -> long { return x(v) < y(v); }, Type::Bool);
    case Op::Le: return make([](const Fn& x, const Fn& y, const Env& v) -> long { return x(v) <= y(v); }, Type::Bool);
    case Op::Gt: return make([](const Fn& x, const Fn& y, const Env& v) -> long { return x(v) > y(v); }, Type::Bool);
    case Op::Ge: return make([](const Fn& x, const Fn& y, const Env& v) -> long { return x(v) >= y(v); }, Type::Bool);
    case Op::And:
      return make([](const Fn& x, const Fn& y, const Env& v) -> long { return x(v) && y(v); }, Type::Bool);
    case Op::Or:
      return make([](const Fn& x, const Fn& y, const Env& v) -> long { return x(v) || y(v); }, Type::Bool);
    case Op::Implies:
      return make([](const Fn& x, const Fn& y, const Env& v) -> long { return !x(v) || y(v); }, Type::Bool);
    default: break;
  }
  throw ElaborationError(e.span, "unsupported expression");
}

// Valuation grid of a variable list in lexicographic declaration order.
struct Grid {
  std::vector<Variable> vars;
  std::size_t size = 1;

  std::size_t code(const long* vals) const {
    std::size_t c = 0;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if (vals[i] < vars[i].lo || vals[i] > vars[i].hi) return size;
      c = c * static_cast<std::size_t>(vars[i].hi - vars[i].lo + 1) + static_cast<std::size_t>(vals[i] - vars[i].lo);
    }
    return c;
  }

  std::vector<long> decode(std::size_t c) const {
    std::vector<long> vals(vars.size());
    for (std::size_t i = vars.size(); i-- > 0;) {
      const auto width = static_cast<std::size_t>(vars[i].hi - vars[i].lo + 1);
      vals[i] = vars[i].lo + static_cast<long>(c % width);
      c /= width;
    }
    return vals;
  }
};

Grid make_grid(const std::vector<VarDecl>& decls, const std::string& owner, Span span, const ElaborateOptions& opts) {
  Grid g;
  std::set<std::string> seen;
  if (decls.empty()) throw ElaborationError(span, "'" + owner + "' declares no variables");
  for (const auto& d : decls) {
    if (!seen.insert(d.name).second) throw ElaborationError(d.span, "variable '" + d.name + "' declared twice");
    const auto width = static_cast<std::size_t>(d.hi - d.lo + 1);
    if (width > opts.max_states || g.size > opts.max_states / width)
      throw ElaborationError(d.span, "state space of '" + owner + "' exceeds the bound of " +
                                         std::to_string(opts.max_states) + " states");
    g.size *= width;
    g.vars.push_back({d.name, d.lo, d.hi});
  }
  return g;
}

std::string render_values(const std::vector<Variable>& vars, const long* vals) {
  std::string out;
  for (std::size_t i = 0; i < vars.size(); ++i)
    out += (i ? ", " : "") + vars[i].name + "=" + std::to_string(vals[i]);
  return out;
}

// Compiled update tree.
struct CUpdate {
  Update::Kind kind = Update::Kind::Skip;
  std::size_t target = 0;
  std::vector<Compiled> values;
  bool range = false;
  std::size_t bound = 0;
  long lo = 0;
  long hi = 0;
  std::optional<Compiled> where;
  std::vector<CUpdate> body;
};

using Assignment = std::vector<std::pair<std::size_t, long>>;

std::vector<CUpdate> compile_updates(const std::vector<Update>& updates, Context& ctx, std::size_t nvars,
                                     std::pair<long, long> hull, std::size_t& next_slot,
                                     std::set<std::string>& assigned) {
  std::vector<CUpdate> out;
  for (const auto& u : updates) {
    CUpdate c;
    c.kind = u.kind;
    switch (u.kind) {
      case Update::Kind::Skip: break;
      case Update::Kind::Assign:
      case Update::Kind::Choose: {
        auto it = ctx.slots.find(u.target);
        if (auto f = ctx.forbidden.find(u.target); f != ctx.forbidden.end()) throw ElaborationError(u.span, f->second);
        if (it == ctx.slots.end() || it->second >= nvars)
          throw ElaborationError(u.span, "'" + u.target + "' is not a state variable");
        if (!assigned.insert(u.target).second)
          throw ElaborationError(u.span, "variable '" + u.target + "' is assigned twice");
        c.target = it->second;
        c.range = u.range;
        for (const auto& v : u.values) c.values.push_back(typed(v, ctx, Type::Int));
        break;
      }
      case Update::Kind::Any: {
        if (ctx.slots.count(u.bound)) throw ElaborationError(u.span, "'" + u.bound + "' shadows another name");
        c.bound = next_slot++;
        std::tie(c.lo, c.hi) = u.bound_range ? *u.bound_range : hull;
        ctx.slots[u.bound] = c.bound;
        c.where = typed(*u.where, ctx, Type::Bool);
        c.body = compile_updates(u.body, ctx, nvars, hull, next_slot, assigned);
        ctx.slots.erase(u.bound);
        break;
      }
    }
    out.push_back(std::move(c));
  }
  return out;
}

// All joint outcomes of simultaneous updates.
std::vector<Assignment> outcomes(const std::vector<CUpdate>& updates, std::vector<long>& vals, const Env& base) {
  std::vector<Assignment> acc{{}};
  for (const auto& u : updates) {
    std::vector<Assignment> mine;
    Env env = base;
    env.vals = vals.data();
    switch (u.kind) {
      case Update::Kind::Skip: mine.push_back({}); break;
      case Update::Kind::Assign: mine.push_back({{u.target, u.values[0].fn(env)}}); break;
      case Update::Kind::Choose:
        if (u.range) {
          for (long v = u.values[0].fn(env), hi = u.values[1].fn(env); v <= hi; ++v) mine.push_back({{u.target, v}});
        } else {
          for (const auto& v : u.values) mine.push_back({{u.target, v.fn(env)}});
        }
        break;
      case Update::Kind::Any:
        for (long z = u.lo; z <= u.hi; ++z) {
          vals[u.bound] = z;
          env.vals = vals.data();
          if (!u.where->fn(env)) continue;
          auto inner = outcomes(u.body, vals, base);
          vals[u.bound] = z;
          mine.insert(mine.end(), inner.begin(), inner.end());
        }
        break;
    }
    std::vector<Assignment> next;
    for (const auto& a : acc)
      for (const auto& m : mine) {
        auto joined = a;
        joined.insert(joined.end(), m.begin(), m.end());
        next.push_back(std::move(joined));
      }
    acc = std::move(next);
    if (acc.empty()) break;
  }
  return acc;
}

struct SpaceInfo {
  Grid grid;
  std::vector<std::vector<long>> rows;
  std::vector<std::int64_t> index;  // grid code -> state, -1 outside the space
  StateSpace space;
};

std::vector<std::string> labels_of(const Grid& grid, const std::vector<std::vector<long>>& rows) {
  std::vector<std::string> out;
  for (const auto& r : rows) out.push_back(render_values(grid.vars, r.data()));
  return out;
}

std::pair<long, long> hull_of(const Grid& g) {
  long lo = g.vars.front().lo, hi = g.vars.front().hi;
  for (const auto& v : g.vars) {
    lo = std::min(lo, v.lo);
    hi = std::max(hi, v.hi);
  }
  return {lo, hi};
}

class Elaborator {
 public:
  Elaborator(const Document& doc, const ElaborateOptions& opts) : doc_(doc), opts_(opts) {}

  Model run() {
    std::vector<const ProofDecl*> proofs;
    std::optional<std::string> last_scope;
    for (const auto& item : doc_.items) {
      if (const auto* s = std::get_if<SystemDecl>(&item)) {
        system(*s);
        last_scope = s->name;
      } else if (const auto* r = std::get_if<RefinementDecl>(&item)) {
        refinement(*r);
        last_scope = r->name;
      } else if (const auto* p = std::get_if<PropertyDecl>(&item)) {
        property(*p, last_scope);
      } else {
        proofs.push_back(&std::get<ProofDecl>(item));
      }
    }
    for (const auto* p : proofs) proof(*p);
    return std::move(model_);
  }

 private:
  void claim_scope_name(const std::string& name, Span span) {
    if (model_.find_scope(name) || infos_.count(name))
      throw ElaborationError(span, "'" + name + "' is already declared");
  }

  Context system_context(const Grid& g) const {
    Context ctx;
    for (std::size_t i = 0; i < g.vars.size(); ++i) ctx.slots[g.vars[i].name] = i;
    return ctx;
  }

  // Builds the event's command; `ctx` covers exactly the scope's own variables.
  Command event_command(const EventDecl& e, const SpaceInfo& info, Context ctx, const std::string& owner) {
    const auto nvars = info.grid.vars.size();
    auto guard = typed(e.guard, ctx, Type::Bool);
    std::size_t next_slot = nvars;
    std::set<std::string> assigned;
    auto body = compile_updates(e.body, ctx, nvars, hull_of(info.grid), next_slot, assigned);
    std::vector<StateRelation::Pair> pairs;
    StateSetBuilder g(info.space);
    std::vector<long> vals(next_slot, 0);
    for (std::size_t s = 0; s < info.rows.size(); ++s) {
      std::copy(info.rows[s].begin(), info.rows[s].end(), vals.begin());
      const Env env{vals.data(), s, 0};
      if (!guard.fn(env)) continue;
      g.insert(s);
      for (const auto& a : outcomes(body, vals, env)) {
        std::vector<long> next(info.rows[s]);
        for (const auto& [slot, v] : a) next[slot] = v;
        const auto code = info.grid.code(next.data());
        const auto target = code < info.index.size() ? info.index[code] : -1;
        if (target < 0)
          throw ElaborationError(e.span, "event '" + e.name + "' of '" + owner + "' does not preserve the invariant: " +
                                             render_values(info.grid.vars, info.rows[s].data()) + " -> " +
                                             render_values(info.grid.vars, next.data()));
        pairs.emplace_back(s, static_cast<std::size_t>(target));
      }
    }
    return Command::guard(std::move(g).build(), Command::prim(StateRelation(info.space, info.space, pairs)));
  }

  SpaceInfo enumerate(const Grid& grid, const std::string& id, const std::vector<Expr>& invariants,
                      const Context& ctx, const std::function<bool(const std::vector<long>&)>& keep) {
    std::vector<Compiled> inv;
    for (const auto& e : invariants) inv.push_back(typed(e, ctx, Type::Bool));
    std::vector<std::vector<long>> rows;
    std::vector<std::int64_t> index(grid.size, -1);
    for (std::size_t c = 0; c < grid.size; ++c) {
      auto vals = grid.decode(c);
      const Env env{vals.data(), 0, 0};
      if (!std::all_of(inv.begin(), inv.end(), [&](const Compiled& f) { return f.fn(env) != 0; })) continue;
      if (keep && !keep(vals)) continue;
      index[c] = static_cast<std::int64_t>(rows.size());
      rows.push_back(std::move(vals));
    }
    if (rows.empty()) return {grid, {}, std::move(index), StateSpace(id, 1)};
    StateSpace space(id, labels_of(grid, rows));
    return {grid, std::move(rows), std::move(index), std::move(space)};
  }

  void system(const SystemDecl& s) {
    claim_scope_name(s.name, s.span);
    const auto grid = make_grid(s.vars, s.name, s.span, opts_);
    const auto ctx = system_context(grid);
    auto info = enumerate(grid, s.name, s.invariants, ctx, nullptr);
    if (info.rows.empty()) throw ElaborationError(s.span, "the invariant of '" + s.name + "' admits no state");
    std::vector<Event> events;
    for (const auto& e : s.events) events.push_back({e.name, event_command(e, info, ctx, s.name)});
    auto sys = make_system(s.name, info.space, std::move(events), s.span);
    finish_scope(s.name, std::move(info), std::move(sys), std::nullopt);
  }

  EventSystem make_system(const std::string& name, const StateSpace& space, std::vector<Event> events, Span span) {
    try {
      return EventSystem(name, space, std::move(events), opts_.conjunctivity_samples);
    } catch (const InvalidModel& err) {
      throw ElaborationError(span, err.what());
    }
  }

  void finish_scope(const std::string& name, SpaceInfo info, EventSystem sys, std::optional<std::size_t> pair) {
    std::map<std::string, StateSet> grd;
    for (const auto& e : sys.events()) grd.emplace(e.label, grd_of(e.command));
    grds_.emplace(name, std::move(grd));
    model_.valuations[info.space.id()] = Valuations{info.grid.vars, info.rows};
    model_.scopes.push_back({name, std::move(sys), pair});
    infos_.emplace(name, std::move(info));
  }

  void refinement(const RefinementDecl& r) {
    claim_scope_name(r.name, r.span);
    const auto* abstract_scope = model_.find_scope(r.abstract_name);
    if (!abstract_scope) throw ElaborationError(r.span, "unknown system '" + r.abstract_name + "'");
    const auto& abs = infos_.at(r.abstract_name);
    const auto grid = make_grid(r.vars, r.name, r.span, opts_);
    for (const auto& v : grid.vars)
      for (const auto& a : abs.grid.vars)
        if (v.name == a.name)
          throw ElaborationError(r.span, "concrete variable '" + v.name + "' reuses an abstract variable name");
    if (r.gluing.empty()) throw ElaborationError(r.span, "refinement '" + r.name + "' has no gluing predicate");

    const auto nc = grid.vars.size();
    auto concrete_ctx = system_context(grid);
    for (const auto& a : abs.grid.vars)
      concrete_ctx.forbidden[a.name] = "abstract variable '" + a.name + "' cannot appear here";
    auto joint = system_context(grid);
    for (std::size_t i = 0; i < abs.grid.vars.size(); ++i) {
      joint.slots[abs.grid.vars[i].name] = nc + i;
      joint.abstract_names.insert(abs.grid.vars[i].name);
    }
    std::vector<Compiled> glue;
    for (const auto& e : r.gluing) glue.push_back(typed(e, joint, Type::Bool));

    auto images = [&](const std::vector<long>& y) {
      std::vector<std::size_t> xs;
      std::vector<long> buf(y);
      buf.resize(nc + abs.grid.vars.size());
      for (std::size_t x = 0; x < abs.rows.size(); ++x) {
        std::copy(abs.rows[x].begin(), abs.rows[x].end(), buf.begin() + static_cast<std::ptrdiff_t>(nc));
        const Env env{buf.data(), 0, x};
        if (std::all_of(glue.begin(), glue.end(), [&](const Compiled& f) { return f.fn(env) != 0; })) xs.push_back(x);
      }
      return xs;
    };

    const bool declared = !r.invariants.empty();
    std::function<bool(const std::vector<long>&)> keep;
    if (!declared) keep = [&](const std::vector<long>& y) { return !images(y).empty(); };
    auto info = enumerate(grid, r.name, r.invariants, concrete_ctx, keep);
    if (info.rows.empty())
      throw ElaborationError(r.span, "refinement '" + r.name + "' has no concrete state glued to an abstract one");
    std::vector<StateRelation::Pair> pairs;
    for (std::size_t y = 0; y < info.rows.size(); ++y) {
      const auto xs = images(info.rows[y]);
      if (xs.empty())
        throw ElaborationError(r.span, "gluing not total: concrete state " +
                                           render_values(grid.vars, info.rows[y].data()) + " has no abstract image");
      for (auto x : xs) pairs.emplace_back(y, x);
    }
    StateRelation gluing(info.space, abstract_scope->system.space(), pairs);

    std::vector<Event> events;
    RefinementPair::Refines refines;
    for (const auto& e : r.events) {
      events.push_back({e.name, event_command(e, info, concrete_ctx, r.name)});
      if (!e.refines || *e.refines == "skip")
        refines[e.name] = std::nullopt;
      else
        refines[e.name] = *e.refines;
    }
    auto sys = make_system(r.name, info.space, std::move(events), r.span);
    try {
      model_.pairs.emplace_back(r.name, abstract_scope->system, sys, std::move(gluing), std::move(refines));
    } catch (const InvalidModel& err) {
      throw ElaborationError(r.span, err.what());
    }
    abstract_of_[r.name] = r.abstract_name;
    finish_scope(r.name, std::move(info), std::move(sys), model_.pairs.size() - 1);
  }

  StateSet predicate_set(const Expr& e, const std::string& scope_name) {
    const auto& info = infos_.at(scope_name);
    auto ctx = system_context(info.grid);
    ctx.grd_concrete = &grds_.at(scope_name);
    const auto nc = info.grid.vars.size();
    const Scope* scope = model_.find_scope(scope_name);
    const RefinementPair* pair = scope->pair ? &model_.pairs[*scope->pair] : nullptr;
    const SpaceInfo* abs = nullptr;
    if (pair) {
      const auto& abstract_name = abstract_of_.at(scope_name);
      abs = &infos_.at(abstract_name);
      for (std::size_t i = 0; i < abs->grid.vars.size(); ++i) {
        ctx.slots[abs->grid.vars[i].name] = nc + i;
        ctx.abstract_names.insert(abs->grid.vars[i].name);
      }
      ctx.grd_abstract = &grds_.at(abstract_name);
    }
    auto pred = typed(e, ctx, Type::Bool);
    StateSetBuilder out(info.space);
    std::vector<long> buf(nc + (abs ? abs->grid.vars.size() : 0), 0);
    for (std::size_t y = 0; y < info.rows.size(); ++y) {
      std::copy(info.rows[y].begin(), info.rows[y].end(), buf.begin());
      if (!pair) {
        if (pred.fn(Env{buf.data(), y, 0})) out.insert(y);
        continue;
      }
      // Concrete state y satisfies P iff some glued abstract state makes P true.
      for (auto x : pair->gluing().successors(y)) {
        std::copy(abs->rows[x].begin(), abs->rows[x].end(), buf.begin() + static_cast<std::ptrdiff_t>(nc));
        if (pred.fn(Env{buf.data(), y, x})) {
          out.insert(y);
          break;
        }
        if (!pred.uses_abstract) break;
      }
    }
    return std::move(out).build();
  }

  void property(const PropertyDecl& p, const std::optional<std::string>& last_scope) {
    if (model_.find_property(p.name)) throw ElaborationError(p.span, "property '" + p.name + "' is already declared");
    std::string scope_name;
    if (p.scope) {
      if (!model_.find_scope(*p.scope)) throw ElaborationError(p.span, "unknown system or refinement '" + *p.scope + "'");
      scope_name = *p.scope;
    } else if (last_scope) {
      scope_name = *last_scope;
    } else {
      throw ElaborationError(p.span, "property '" + p.name + "' precedes every system");
    }
    const auto& sys = model_.find_scope(scope_name)->system;
    for (const auto& h : p.helpful)
      if (!sys.has_event(h)) throw ElaborationError(p.span, "unknown helpful event '" + h + "' in '" + scope_name + "'");
    model_.properties.push_back(
        {p.name, p.kind, scope_name, p.helpful, predicate_set(p.from, scope_name), predicate_set(p.to, scope_name), p.span});
  }

  void proof(const ProofDecl& p) {
    if (model_.find_proof(p.name)) throw ElaborationError(p.span, "proof '" + p.name + "' is already declared");
    const auto* goal = model_.find_property(p.goal);
    if (!goal) throw ElaborationError(p.span, "unknown goal property '" + p.goal + "'");
    if (goal->kind == PropertyDecl::Kind::Unless)
      throw ElaborationError(p.span, "goal '" + p.goal + "' is an unless property, not a progress property");
    const auto& sys = model_.find_scope(goal->scope)->system;
    ElabProof out{p.name, goal->scope, p.goal, {p.name, p.goal, {}}, p.span};
    for (const auto& s : p.steps) {
      const auto rule = parse_rule(s.rule);
      if (!rule) throw ElaborationError(s.span, "unknown rule '" + s.rule + "'");
      ProofStep step;
      step.name = s.name;
      step.rule = *rule;
      step.premises = s.premises;
      if (!s.helpful.empty() && !(*rule == Rule::Brl && s.from))
        throw ElaborationError(s.span, "'helpful' is only allowed on an inline brl step");
      if (s.from) {
        auto lhs = predicate_set(*s.from, goal->scope);
        auto rhs = predicate_set(*s.to, goal->scope);
        if (*rule == Rule::Brl) {
          if (!s.premises.empty())
            throw ElaborationError(s.span, "brl takes either a property name or 'from ... to ...'");
          auto helpful = s.helpful.empty() ? sys.labels() : s.helpful;
          for (const auto& h : helpful)
            if (!sys.has_event(h)) throw ElaborationError(s.span, "unknown helpful event '" + h + "'");
          step.inline_ensures = EnsuresProperty{s.name, std::move(helpful), std::move(lhs), std::move(rhs)};
        } else {
          step.claim = LeadsTo{s.name, std::move(lhs), std::move(rhs)};
        }
      } else if (*rule == Rule::Thlto) {
        throw ElaborationError(s.span, "thlto needs 'from ... to ...'");
      }
      out.script.steps.push_back(std::move(step));
    }
    if (out.script.steps.empty()) throw ElaborationError(p.span, "proof '" + p.name + "' has no steps");
    model_.proofs.push_back(std::move(out));
  }

  const Document& doc_;
  const ElaborateOptions& opts_;
  Model model_;
  std::map<std::string, SpaceInfo> infos_;
  std::map<std::string, std::map<std::string, StateSet>> grds_;
  std::map<std::string, std::string> abstract_of_;
};

}  // namespace

Model elaborate(const Document& doc, const ElaborateOptions& options) { return Elaborator(doc, options).run(); }

}  // namespace fairb::dsl
