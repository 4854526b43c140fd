#include "fairb/command.hpp"

#include <random>
#include <vector>

#include "fairb/error.hpp"

namespace fairb {

namespace {

constexpr std::size_t kExhaustivePairLimit = 12;

std::size_t subtree_nodes(const Command& a) { return a.node_count(); }

}  // namespace

Command Command::skip(const StateSpace& space) {
  return Command(std::make_shared<const Node>(Node{Kind::Skip, space, {}, {}, {}, {}, false, 1}));
}

Command Command::prim(StateRelation rel) {
  require_same_space(rel.source(), rel.target());
  auto space = rel.source();
  return Command(std::make_shared<const Node>(Node{Kind::Prim, space, {}, std::move(rel), {}, {}, false, 1}));
}

Command Command::guard(StateSet g, Command body) {
  require_same_space(g.space(), body.space());
  auto space = body.space();
  const bool dt = body.contains_dovetail();
  const auto n = 1 + subtree_nodes(body);
  return Command(std::make_shared<const Node>(Node{Kind::Guard, space, std::move(g), {}, std::move(body), {}, dt, n}));
}

Command Command::precond(StateSet p, Command body) {
  require_same_space(p.space(), body.space());
  auto space = body.space();
  const bool dt = body.contains_dovetail();
  const auto n = 1 + subtree_nodes(body);
  return Command(
      std::make_shared<const Node>(Node{Kind::Precond, space, std::move(p), {}, std::move(body), {}, dt, n}));
}

Command Command::choice(Command left, Command right) {
  require_same_space(left.space(), right.space());
  auto space = left.space();
  const bool dt = left.contains_dovetail() || right.contains_dovetail();
  const auto n = 1 + left.node_count() + right.node_count();
  return Command(
      std::make_shared<const Node>(Node{Kind::Choice, space, {}, {}, std::move(left), std::move(right), dt, n}));
}

Command Command::seq(Command first, Command second) {
  require_same_space(first.space(), second.space());
  auto space = first.space();
  const bool dt = first.contains_dovetail() || second.contains_dovetail();
  const auto n = 1 + first.node_count() + second.node_count();
  return Command(
      std::make_shared<const Node>(Node{Kind::Seq, space, {}, {}, std::move(first), std::move(second), dt, n}));
}

Command Command::dovetail(Command left, Command right) {
  require_same_space(left.space(), right.space());
  auto space = left.space();
  const auto n = 1 + left.node_count() + right.node_count();
  return Command(
      std::make_shared<const Node>(Node{Kind::Dovetail, space, {}, {}, std::move(left), std::move(right), true, n}));
}

Command Command::magic(const StateSpace& space) { return guard(StateSet::empty(space), skip(space)); }

Command Command::choice_of(const StateSpace& space, std::span<const Command> alternatives) {
  if (alternatives.empty()) return magic(space);
  Command acc = alternatives.front();
  require_same_space(acc.space(), space);
  for (std::size_t i = 1; i < alternatives.size(); ++i) acc = choice(acc, alternatives[i]);
  return acc;
}

const StateSet& Command::set() const {
  if (!node_->set) throw Error("command has no set operand");
  return *node_->set;
}

const StateRelation& Command::relation() const {
  if (!node_->relation) throw Error("command is not primitive");
  return *node_->relation;
}

const Command& Command::left() const {
  if (!node_->left) throw Error("command has no sub-command");
  return *node_->left;
}

const Command& Command::right() const {
  if (!node_->right) throw Error("command has no right operand");
  return *node_->right;
}

std::string Command::to_string() const {
  switch (kind()) {
    case Kind::Skip: return "skip";
    case Kind::Prim: {
      std::string out = "prim{";
      bool first = true;
      for (const auto& [s, t] : relation().pairs()) {
        if (!first) out += ",";
        first = false;
        out += std::to_string(s) + "->" + std::to_string(t);
      }
      return out + "}";
    }
    case Kind::Guard: return "(" + set().to_string() + " ==> " + body().to_string() + ")";
    case Kind::Precond: return "(" + set().to_string() + " | " + body().to_string() + ")";
    case Kind::Choice: return "(" + left().to_string() + " [] " + right().to_string() + ")";
    case Kind::Seq: return "(" + left().to_string() + " ; " + right().to_string() + ")";
    case Kind::Dovetail: return "(" + left().to_string() + " dt " + right().to_string() + ")";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Semantics

namespace {

// { x | rel[{x}] subset of r }
StateSet demonic_box(const StateRelation& rel, const StateSet& r) { return ~rel.inverse_image(~r); }

}  // namespace

StateSet liberal_apply(const Command& c, const StateSet& r) {
  require_same_space(c.space(), r.space());
  switch (c.kind()) {
    case Command::Kind::Skip: return r;
    case Command::Kind::Prim: return demonic_box(c.relation(), r);
    case Command::Kind::Guard: return ~c.set() | liberal_apply(c.body(), r);
    case Command::Kind::Precond: {
      // {x | x in u and u subset of r} is u when r = u and empty otherwise.
      auto body = liberal_apply(c.body(), r);
      return r.is_full() ? body : c.set() & body;
    }
    case Command::Kind::Choice:
    case Command::Kind::Dovetail: return liberal_apply(c.left(), r) & liberal_apply(c.right(), r);
    case Command::Kind::Seq: return liberal_apply(c.left(), liberal_apply(c.right(), r));
  }
  throw Error("unknown command kind");
}

StateSet pre_of(const Command& c) {
  const auto& u = c.space();
  switch (c.kind()) {
    case Command::Kind::Skip:
    case Command::Kind::Prim: return StateSet::full(u);
    case Command::Kind::Guard: return ~c.set() | pre_of(c.body());
    case Command::Kind::Precond: return c.set() & pre_of(c.body());
    case Command::Kind::Choice: return pre_of(c.left()) & pre_of(c.right());
    case Command::Kind::Seq: return str_apply(c.left(), pre_of(c.right()));
    case Command::Kind::Dovetail: {
      const auto f_u = pre_of(c.left());
      const auto g_u = pre_of(c.right());
      const auto f_grd = grd_of(c.left());
      const auto g_grd = grd_of(c.right());
      return (f_u & g_u) | (f_grd & f_u) | (g_grd & g_u);
    }
  }
  throw Error("unknown command kind");
}

StateSet str_apply(const Command& c, const StateSet& r) {
  require_same_space(c.space(), r.space());
  switch (c.kind()) {
    case Command::Kind::Skip: return r;
    case Command::Kind::Prim: return demonic_box(c.relation(), r);
    case Command::Kind::Guard: return ~c.set() | str_apply(c.body(), r);
    case Command::Kind::Precond: return c.set() & str_apply(c.body(), r);
    case Command::Kind::Choice: return str_apply(c.left(), r) & str_apply(c.right(), r);
    case Command::Kind::Seq: return str_apply(c.left(), str_apply(c.right(), r));
    case Command::Kind::Dovetail:
      // Only the pairing condition defines the dovetail transformer.
      return liberal_apply(c, r) & pre_of(c);
  }
  throw Error("unknown command kind");
}

StateSet apply(const Command& c, TransformerKind kind, const StateSet& r) {
  return kind == TransformerKind::Str ? str_apply(c, r) : liberal_apply(c, r);
}

StateSet grd_of(const Command& c) { return ~str_apply(c, StateSet::empty(c.space())); }

bool pairing_check(const Command& c, const StateSet& r) {
  return str_apply(c, r) == (liberal_apply(c, r) & pre_of(c));
}

ConjunctivityResult conjunctivity_check(const Command& c, std::size_t samples, std::uint64_t seed) {
  const auto& u = c.space();
  const std::size_t n = u.size();
  ConjunctivityResult result;
  if (n <= kExhaustivePairLimit) {
    const std::uint64_t subsets = std::uint64_t{1} << n;
    std::vector<std::uint64_t> table(subsets);
    for (std::uint64_t m = 0; m < subsets; ++m) table[m] = str_apply(c, StateSet::from_mask(u, m)).to_mask();
    for (std::uint64_t a = 0; a < subsets; ++a) {
      for (std::uint64_t b = a; b < subsets; ++b) {
        if (table[a & b] != (table[a] & table[b])) {
          result.conjunctive = false;
          result.witness.emplace(StateSet::from_mask(u, a), StateSet::from_mask(u, b));
          return result;
        }
      }
    }
    return result;
  }
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);
  auto random_set = [&] {
    StateSetBuilder b(u);
    for (std::size_t i = 0; i < n; ++i)
      if (coin(rng)) b.insert(i);
    return std::move(b).build();
  };
  for (std::size_t i = 0; i < std::max<std::size_t>(samples, 1); ++i) {
    auto a = random_set();
    auto b = random_set();
    if (!(str_apply(c, a & b) == (str_apply(c, a) & str_apply(c, b)))) {
      result.conjunctive = false;
      result.witness.emplace(std::move(a), std::move(b));
      return result;
    }
  }
  return result;
}

namespace {

using Pairs = std::vector<StateRelation::Pair>;

std::optional<Pairs> structural_pairs(const Command& c) {
  const auto n = c.space().size();
  switch (c.kind()) {
    case Command::Kind::Skip: {
      Pairs out;
      for (std::size_t i = 0; i < n; ++i) out.emplace_back(i, i);
      return out;
    }
    case Command::Kind::Prim: return c.relation().pairs();
    case Command::Kind::Guard: {
      auto inner = structural_pairs(c.body());
      if (!inner) return std::nullopt;
      std::erase_if(*inner, [&](const auto& pr) { return !c.set().contains(pr.first); });
      return inner;
    }
    case Command::Kind::Precond:
      if (!c.set().is_full()) return std::nullopt;
      return structural_pairs(c.body());
    case Command::Kind::Choice: {
      auto a = structural_pairs(c.left());
      auto b = structural_pairs(c.right());
      if (!a || !b) return std::nullopt;
      a->insert(a->end(), b->begin(), b->end());
      return a;
    }
    case Command::Kind::Seq: {
      auto a = structural_pairs(c.left());
      auto b = structural_pairs(c.right());
      if (!a || !b) return std::nullopt;
      StateRelation second(c.space(), c.space(), *b);
      Pairs out;
      for (const auto& [x, y] : *a)
        for (auto z : second.successors(y)) out.emplace_back(x, z);
      return out;
    }
    case Command::Kind::Dovetail: return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

StateRelation successor_relation(const Command& c) {
  if (auto pairs = structural_pairs(c)) return StateRelation(c.space(), c.space(), *pairs);
  const auto& u = c.space();
  Pairs out;
  const auto full = StateSet::full(u);
  for (std::size_t y = 0; y < u.size(); ++y) {
    const auto excluded = ~str_apply(c, full.without(y));
    excluded.for_each([&](std::size_t x) { out.emplace_back(x, y); });
  }
  return StateRelation(u, u, out);
}

}  // namespace fairb
