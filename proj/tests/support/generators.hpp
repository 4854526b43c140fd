#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "fairb/command.hpp"
#include "fairb/event_system.hpp"
#include "fairb/fair_loop.hpp"

namespace fairb::testing {

using Rng = std::mt19937_64;

StateSpace make_space(std::size_t n, const std::string& id = "u");
StateSet random_set(const StateSpace& u, Rng& rng, double density = 0.5);
/// Random endo-relation; `total` forces at least one successor per state.
StateRelation random_relation(const StateSpace& u, Rng& rng, double density = 0.35, bool total = false);

struct CommandMix {
  bool dovetail = true;
  bool precond = true;
};

Command random_command(const StateSpace& u, Rng& rng, int depth, CommandMix mix = {});
/// Guarded relational events and their choices/sequences; always terminate.
Command random_event(const StateSpace& u, Rng& rng, int depth = 1);
EventSystem random_system(std::size_t n, std::size_t events, Rng& rng, const std::string& id = "u");

/// Ensures-satisfying instance: p, q and helpful set K for which WF0 and
/// WF1 hold by construction.
struct EnsuresInstance {
  EventSystem system;
  std::vector<std::string> helpful;
  StateSet p;
  StateSet q;
};
EnsuresInstance random_ensures_instance(std::size_t n, std::size_t events, Rng& rng, bool single_helpful);

FairLoop random_fair_loop(const StateSpace& u, Rng& rng);

}  // namespace fairb::testing
