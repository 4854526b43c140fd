#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fairb/command.hpp"

namespace fairb {

struct Event {
  std::string label;
  Command command;
};

/// A finite family of named events over one state space. Every event must
/// terminate everywhere and be conjunctive; the constructor enforces both.
class EventSystem {
 public:
  /// `conjunctivity_samples` is used only when the space is too large for
  /// the exhaustive conjunctivity check.
  EventSystem(std::string name, StateSpace space, std::vector<Event> events,
              std::size_t conjunctivity_samples = 64);

  const std::string& name() const noexcept { return name_; }
  const StateSpace& space() const noexcept { return space_; }
  const std::vector<Event>& events() const noexcept { return events_; }
  std::vector<std::string> labels() const;

  bool has_event(const std::string& label) const { return index_.count(label) != 0; }
  const Event& event(const std::string& label) const;
  std::size_t index_of(const std::string& label) const;
  /// Demonic successor relation of the event at `index`.
  const StateRelation& transitions(std::size_t index) const { return transitions_[index]; }

  /// The choice of all events.
  const Command& as_command() const noexcept { return whole_; }
  /// The choice of the named events; magic when `labels` is empty.
  Command choice_of(const std::vector<std::string>& labels) const;

 private:
  std::string name_;
  StateSpace space_;
  std::vector<Event> events_;
  std::map<std::string, std::size_t> index_;
  std::vector<StateRelation> transitions_;
  Command whole_;
};

/// G . P >>w Q: from p, q is reached by one step of the helpful events while
/// p persists under the others.
struct EnsuresProperty {
  std::string name;
  std::vector<std::string> helpful;
  StateSet p;
  StateSet q;
};

/// An abstract system on u, a concrete one on v, a total gluing relation
/// from v to u, and for each concrete event the abstract event it refines
/// (nullopt for a new event that refines skip).
class RefinementPair {
 public:
  using Refines = std::map<std::string, std::optional<std::string>>;

  RefinementPair(std::string name, EventSystem abstract_system, EventSystem concrete_system,
                 StateRelation gluing, Refines refines);

  const std::string& name() const noexcept { return name_; }
  const EventSystem& abstract_system() const noexcept { return abstract_; }
  const EventSystem& concrete_system() const noexcept { return concrete_; }
  const StateRelation& gluing() const noexcept { return gluing_; }
  const Refines& refines() const noexcept { return refines_; }

  /// Concrete labels refining `abstract_label`, in concrete declaration order.
  std::vector<std::string> refiners_of(const std::string& abstract_label) const;
  /// Concrete labels refining skip.
  std::vector<std::string> new_events() const;
  /// Abstract event refined by `concrete_label`; nullopt for new events.
  std::optional<std::string> refined_by(const std::string& concrete_label) const;

  /// r^-1[a] for a ⊆ u.
  StateSet to_concrete(const StateSet& a) const { return gluing_.inverse_image(a); }

 private:
  std::string name_;
  EventSystem abstract_;
  EventSystem concrete_;
  StateRelation gluing_;
  Refines refines_;
};

}  // namespace fairb
