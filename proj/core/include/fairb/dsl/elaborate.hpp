#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fairb/dsl/ast.hpp"
#include "fairb/error.hpp"
#include "fairb/event_system.hpp"
#include "fairb/leadsto.hpp"
#include "fairb/proof.hpp"

namespace fairb::dsl {

class ElaborationError : public Error {
 public:
  ElaborationError(Span span, const std::string& message) : Error(message), span_(span) {}
  Span span() const noexcept { return span_; }
  Diagnostic diagnostic() const { return {Diagnostic::Severity::Error, span_, what()}; }

 private:
  Span span_;
};

struct ElaborateOptions {
  std::size_t max_states = std::size_t{1} << 20;
  std::size_t conjunctivity_samples = 64;
};

struct Variable {
  std::string name;
  long lo = 0;
  long hi = 0;
};

/// The variable valuation behind every state of one space.
struct Valuations {
  std::vector<Variable> vars;
  std::vector<std::vector<long>> rows;
};

/// A system, or the concrete side of a refinement.
struct Scope {
  std::string name;
  EventSystem system;
  std::optional<std::size_t> pair;  // index into Model::pairs
};

struct ElabProperty {
  std::string name;
  PropertyDecl::Kind kind = PropertyDecl::Kind::Ensures;
  std::string scope;
  std::vector<std::string> helpful;
  StateSet from;
  StateSet to;
  Span span;

  EnsuresProperty as_ensures() const { return {name, helpful, from, to}; }
  LeadsTo as_leadsto() const { return {name, from, to}; }
  Unless as_unless() const { return {name, from, to}; }
};

struct ElabProof {
  std::string name;
  std::string scope;
  std::string goal;
  ProofScript script;
  Span span;
};

struct Model {
  std::vector<Scope> scopes;
  std::vector<RefinementPair> pairs;
  std::vector<ElabProperty> properties;
  std::vector<ElabProof> proofs;
  std::map<std::string, Valuations> valuations;  // keyed by space id

  const Scope* find_scope(const std::string& name) const;
  const RefinementPair* find_pair(const std::string& name) const;
  const ElabProperty* find_property(const std::string& name) const;
  const ElabProof* find_proof(const std::string& name) const;
  std::size_t total_states() const;

  /// Variable bindings of a state, in declaration order.
  std::vector<std::pair<std::string, long>> bindings(const StateSpace& space, std::size_t state) const;
  /// "x=2" or "y=1, b=0".
  std::string render_state(const StateSpace& space, std::size_t state) const;
};

/// Enumerates valuations, restricts them to the invariant and builds the
/// semantic objects. Throws ElaborationError.
Model elaborate(const Document& doc, const ElaborateOptions& options = {});

}  // namespace fairb::dsl
