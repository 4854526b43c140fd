#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fairb/event_system.hpp"
#include "fairb/leadsto.hpp"

namespace fairb {

enum class Verdict { Pass, Fail, HypothesisFailed };
std::string_view to_string(Verdict v) noexcept;

struct Witness {
  StateSpace space;
  std::size_t state;
  std::string role;
};

struct ObligationReport {
  std::string id;       // WF0, WF1, ENSURES, REF, SAP, LIP-goal, ...
  std::string subject;  // property, event or pair name
  Verdict verdict = Verdict::Pass;
  std::vector<Witness> witnesses;
  std::string narrative;
  std::vector<std::string> refs;
  std::optional<FairLasso> lasso;
  std::optional<LeadsTo> goal;

  bool passed() const noexcept { return verdict == Verdict::Pass; }
};

struct SplitSystem {
  Command helpful;
  Command rest;
};

/// helpful = choice over K, rest = choice over L - K (magic when K = L).
SplitSystem split_system(const EventSystem& sys, const std::vector<std::string>& helpful);

/// p - q ⊆ S(p | q)
ObligationReport check_wf0(const EventSystem& sys, const EnsuresProperty& prop);
/// p - q ⊆ grd(G) & G(q)
ObligationReport check_wf1(const EventSystem& sys, const EnsuresProperty& prop);
/// WF0 and WF1; on success also confirms p | q ⊆ X(q)(q).
ObligationReport check_ensures(const EventSystem& sys, const EnsuresProperty& prop);

struct RefinementCheckOptions {
  /// Allow exhaustive enumeration of every s ⊆ v up to 18 concrete states.
  bool exhaustive = false;
  /// Random subsets checked in addition to the structural generators. Zero
  /// disables the structural mode on spaces above the exhaustive limit.
  std::size_t samples = 64;
  std::uint64_t seed = 0;
};

/// F(~r[~s]) ⊆ ~r[~F'(s)] for every s ⊆ v, where F is the abstract event the
/// concrete event refines (skip for new events). Spaces of at most 12
/// states are enumerated; larger ones use the co-atom generators, which are
/// exact for conjunctive events, plus random samples.
ObligationReport check_event_refinement(const RefinementPair& rp, const std::string& concrete_label,
                                        const RefinementCheckOptions& options = {});
std::vector<ObligationReport> check_refinement(const RefinementPair& rp, const RefinementCheckOptions& options = {});

/// Concrete views of an abstract ensures property.
struct RefinedSets {
  StateSet p;        // r^-1[p]
  StateSet q;        // r^-1[q]
  StateSet pending;  // r^-1[p - q]
  StateSet guard;    // grd(G')
  Command helpful;   // G'
  Command rest;      // F' [] H
  std::vector<std::string> helpful_labels;
};

/// Throws InvalidModel when a helpful abstract event is unknown.
RefinedSets refined_sets(const RefinementPair& rp, const EnsuresProperty& prop);

/// F'(v) = G'(v) = H(v) = v and the stability inclusions r^-1[p - q] ⊆
/// F'(p' | q'), G'(q'), H(p' | q'), plus p' - q' ⊆ r^-1[p - q]. Gated on
/// the abstract ensures and the event refinement conditions.
std::vector<ObligationReport> derived_inclusions(const RefinementPair& rp, const EnsuresProperty& prop,
                                                 const RefinementCheckOptions& options = {});

/// r^-1[p - q] & grd(G') ⊆ (F' [] H)(grd(G'))
ObligationReport check_sap(const RefinementPair& rp, const EnsuresProperty& prop);

/// r^-1[p - q] - grd(G') ~> grd(G') on the concrete system.
LeadsTo lip_goal(const RefinementPair& rp, const EnsuresProperty& prop);

struct LipEvidence {
  enum class Kind { Script, Oracle };
  Kind kind = Kind::Oracle;
  LeadsTo goal;
  bool discharged = false;
  std::string source;  // script name or "oracle"
};

/// Checks every hypothesis (abstract ensures, refinement conditions, SAP,
/// LIP evidence) and then the concrete conclusions: the ensures
/// G' . p' & grd(G') >>w q' and p' ~> q', both re-verified semantically.
ObligationReport check_refined_ensures(const RefinementPair& rp, const EnsuresProperty& prop,
                                       const LipEvidence& lip, const RefinementCheckOptions& options = {});

}  // namespace fairb
