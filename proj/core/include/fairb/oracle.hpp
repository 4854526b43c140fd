#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fairb/event_system.hpp"
#include "fairb/leadsto.hpp"

namespace fairb {

/// A fairness unit is a group of events treated as one weakly-fair process:
/// it is enabled where any member is enabled and served when any member
/// runs. Events not named in any unit form singleton units.
using FairnessUnits = std::vector<std::vector<std::string>>;

struct OracleResult {
  bool holds = true;
  std::optional<FairLasso> lasso;
  std::size_t explored = 0;  // states reachable from p - q inside ~q
};

/// Decides p ~> q under weak fairness by searching the states reachable
/// from p - q without touching q for a deadlock or a strongly connected
/// component that some fair run can stay in forever.
OracleResult semantic_leadsto(const EventSystem& sys, const StateSet& p, const StateSet& q,
                              const FairnessUnits& units = {});

/// The units a property with helpful events K is judged under: K as one
/// unit, every other event on its own.
FairnessUnits helpful_units(const EventSystem& sys, const std::vector<std::string>& helpful);

}  // namespace fairb
