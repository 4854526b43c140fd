#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>

#include "fairb/sets.hpp"

namespace fairb {

/// Selects between the total-correctness transformer and the liberal one
/// (which also accepts non-termination).
enum class TransformerKind { Str, Liberal };

/// Immutable command AST over a single state space.
///
/// Prim nodes are demonic: a state with no successors is miraculous, a state
/// with several successors must reach the postcondition from all of them.
/// Precond nodes abort outside their set. Dovetail is the fair choice
/// operator; it shares the liberal semantics of Choice but has a weaker
/// termination set.
class Command {
 public:
  enum class Kind { Skip, Prim, Guard, Precond, Choice, Seq, Dovetail };

  static Command skip(const StateSpace& space);
  /// Relation must be an endo-relation on one space.
  static Command prim(StateRelation rel);
  static Command guard(StateSet g, Command body);
  static Command precond(StateSet p, Command body);
  static Command choice(Command left, Command right);
  static Command seq(Command first, Command second);
  static Command dovetail(Command left, Command right);
  /// The empty choice: enabled nowhere, establishes anything.
  static Command magic(const StateSpace& space);
  /// Left-folded choice; magic when the list is empty.
  static Command choice_of(const StateSpace& space, std::span<const Command> alternatives);

  Kind kind() const noexcept;
  const StateSpace& space() const noexcept;

  /// Guard/Precond set.
  const StateSet& set() const;
  const StateRelation& relation() const;
  /// Body of Guard/Precond, left operand of Choice/Dovetail, first of Seq.
  const Command& left() const;
  /// Right operand of Choice/Dovetail, second of Seq.
  const Command& right() const;
  const Command& body() const { return left(); }

  bool contains_dovetail() const noexcept;
  std::size_t node_count() const noexcept;

  std::string to_string() const;

 private:
  struct Node;
  explicit Command(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct Command::Node {
  Kind kind;
  StateSpace space;
  std::optional<StateSet> set;
  std::optional<StateRelation> relation;
  std::optional<Command> left;
  std::optional<Command> right;
  bool has_dovetail = false;
  std::size_t nodes = 1;
};

inline Command::Kind Command::kind() const noexcept { return node_->kind; }
inline const StateSpace& Command::space() const noexcept { return node_->space; }
inline bool Command::contains_dovetail() const noexcept { return node_->has_dovetail; }
inline std::size_t Command::node_count() const noexcept { return node_->nodes; }

StateSet liberal_apply(const Command& c, const StateSet& r);
StateSet str_apply(const Command& c, const StateSet& r);
StateSet apply(const Command& c, TransformerKind kind, const StateSet& r);
/// Termination set; equals str_apply(c, u).
StateSet pre_of(const Command& c);
/// Complement of str_apply(c, empty).
StateSet grd_of(const Command& c);

struct ConjunctivityResult {
  bool conjunctive = true;
  std::optional<std::pair<StateSet, StateSet>> witness;
};

/// Checks str(c)(a & b) == str(c)(a) & str(c)(b). Exhaustive over all pairs
/// when the space has at most 12 states, otherwise `samples` random pairs.
ConjunctivityResult conjunctivity_check(const Command& c, std::size_t samples, std::uint64_t seed = 0);

/// str(c)(r) == liberal(c)(r) & pre(c).
bool pairing_check(const Command& c, const StateSet& r);

/// Demonic successor relation of a conjunctive, always-terminating command:
/// y is a successor of x iff x is not in str(c)(u - {y}). Relational shapes
/// are extracted structurally; anything else is probed through str_apply.
StateRelation successor_relation(const Command& c);

}  // namespace fairb
