#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fairb/sets.hpp"

namespace fairb {

/// lhs ~> rhs: every fair execution from lhs eventually reaches rhs.
struct LeadsTo {
  std::string name;
  StateSet lhs;
  StateSet rhs;
};

/// lhs unless rhs: from lhs - rhs every step stays in lhs | rhs.
struct Unless {
  std::string name;
  StateSet lhs;
  StateSet rhs;
};

/// Why a fairness unit does not force the run out of the cycle.
struct Justification {
  enum class Kind { Disabled, Taken };
  std::vector<std::string> events;  // members of the unit
  Kind kind = Kind::Disabled;
  std::size_t state = 0;            // disabled here, or source of the taken step
  std::optional<std::size_t> target;
  std::optional<std::string> event;  // the taken event
};

/// A weakly-fair execution that never reaches the target set: the stem is
/// walked once, the cycle forever. `stem_events[i]` moves stem[i] to the next
/// state and `cycle_events[i]` moves cycle[i] to cycle[(i+1) % size]. An
/// empty label marks a stutter at a deadlocked state.
struct FairLasso {
  std::vector<std::size_t> stem;
  std::vector<std::string> stem_events;
  std::vector<std::size_t> cycle;
  std::vector<std::string> cycle_events;
  std::vector<Justification> justifications;
  bool deadlock = false;
};

}  // namespace fairb
