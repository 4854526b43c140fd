#pragma once

#include <random>
#include <string>
#include <vector>

#include "fairb/event_system.hpp"

namespace bench {

inline fairb::StateSet random_set(const fairb::StateSpace& u, std::mt19937_64& rng, double density = 0.5) {
  std::bernoulli_distribution coin(density);
  fairb::StateSetBuilder b(u);
  for (std::size_t i = 0; i < u.size(); ++i)
    if (coin(rng)) b.insert(i);
  return std::move(b).build();
}

// Each state gets `fanout` random successors, enabled on a random half.
inline fairb::Command random_event(const fairb::StateSpace& u, std::mt19937_64& rng, std::size_t fanout = 2) {
  std::uniform_int_distribution<std::size_t> pick(0, u.size() - 1);
  std::bernoulli_distribution enabled(0.5);
  std::vector<fairb::StateRelation::Pair> pairs;
  for (std::size_t s = 0; s < u.size(); ++s)
    if (enabled(rng))
      for (std::size_t k = 0; k < fanout; ++k) pairs.emplace_back(s, pick(rng));
  fairb::StateRelation rel(u, u, pairs);
  return fairb::Command::guard(rel.domain(), fairb::Command::prim(rel));
}

inline fairb::EventSystem random_system(std::size_t n, std::size_t events, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const fairb::StateSpace u("u", n);
  std::vector<fairb::Event> es;
  for (std::size_t i = 0; i < events; ++i) es.push_back({"e" + std::to_string(i), random_event(u, rng)});
  return fairb::EventSystem("u", u, std::move(es));
}

}  // namespace bench
