#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace fairb::dsl {

struct Span {
  int line = 0;
  int col = 0;
};

struct Diagnostic {
  enum class Severity { Error, Warning };
  Severity severity = Severity::Error;
  Span span;
  std::string message;

  std::string to_string() const;
};

/// Integer and boolean expressions share one tree; elaboration types them.
struct Expr {
  enum class Op {
    Int, Bool, Var, Grd,
    Neg, Add, Sub, Mul,
    Eq, Ne, Lt, Le, Gt, Ge, In,
    Not, And, Or, Implies,
  };
  Op op = Op::Int;
  long value = 0;     // Int, Bool
  std::string name;   // Var, Grd
  std::vector<Expr> args;
  /// In: args[0] is the tested value; the rest are members, or exactly two
  /// bounds when `range` is set.
  bool range = false;
  Span span;
};

struct Update {
  enum class Kind { Assign, Choose, Any, Skip };
  Kind kind = Kind::Skip;
  std::string target;          // Assign, Choose
  std::vector<Expr> values;    // Assign: one; Choose: members or two bounds
  bool range = false;          // Choose over lo..hi
  std::string bound;           // Any
  std::optional<std::pair<long, long>> bound_range;
  std::optional<Expr> where;   // Any
  std::vector<Update> body;    // Any
  Span span;
};

struct VarDecl {
  std::string name;
  long lo = 0;
  long hi = 0;
  Span span;
};

struct EventDecl {
  std::string name;
  /// Set inside refinements: the refined abstract event, or "skip".
  std::optional<std::string> refines;
  Expr guard;
  std::vector<Update> body;
  Span span;
};

struct SystemDecl {
  std::string name;
  std::vector<VarDecl> vars;
  std::vector<Expr> invariants;
  std::vector<EventDecl> events;
  Span span;
};

struct RefinementDecl {
  std::string name;
  std::string abstract_name;
  std::vector<VarDecl> vars;
  std::vector<Expr> invariants;
  std::vector<Expr> gluing;
  std::vector<EventDecl> events;
  Span span;
};

struct PropertyDecl {
  enum class Kind { Ensures, LeadsTo, Unless };
  std::string name;
  std::optional<std::string> scope;
  Kind kind = Kind::Ensures;
  std::vector<std::string> helpful;
  Expr from;
  Expr to;
  Span span;
};

struct StepDecl {
  std::string name;
  std::string rule;
  std::vector<std::string> premises;
  std::optional<Expr> from;
  std::optional<Expr> to;
  std::vector<std::string> helpful;
  Span span;
};

struct ProofDecl {
  std::string name;
  std::string goal;
  std::vector<StepDecl> steps;
  Span span;
};

using Item = std::variant<SystemDecl, RefinementDecl, PropertyDecl, ProofDecl>;

struct Document {
  std::vector<Item> items;

  std::size_t system_count() const;
  std::size_t refinement_count() const;
  std::size_t property_count() const;
  std::size_t proof_count() const;
};

}  // namespace fairb::dsl
