#include "fairb/fixpoint.hpp"

#include <limits>
#include <random>
#include <vector>

#include "fairb/error.hpp"

namespace fairb {

namespace {

std::uint64_t step_budget(std::size_t size) {
  if (size >= 63) return std::numeric_limits<std::uint64_t>::max();
  return (std::uint64_t{1} << size) + 1;
}

StateSet kleene(const SetFunction& f, StateSet x, const char* which) {
  const auto budget = step_budget(f.space().size());
  for (std::uint64_t step = 0; step < budget; ++step) {
    auto next = f(x);
    if (next == x) return x;
    x = std::move(next);
  }
  throw MonotonicityViolation(std::string(which) + " iteration on '" + f.space().id() +
                              "' did not stabilize; the function is not monotone");
}

}  // namespace

StateSet SetFunction::operator()(const StateSet& x) const {
  require_same_space(x.space(), space_);
  auto y = fn_(x);
  require_same_space(y.space(), space_);
  return y;
}

SetFunction SetFunction::identity(const StateSpace& space) {
  return SetFunction(space, [](const StateSet& x) { return x; });
}

SetFunction SetFunction::constant(StateSet value) {
  auto space = value.space();
  return SetFunction(space, [v = std::move(value)](const StateSet&) { return v; });
}

StateSet lfp(const SetFunction& f) { return kleene(f, StateSet::empty(f.space()), "least fixpoint"); }

StateSet gfp(const SetFunction& f) { return kleene(f, StateSet::full(f.space()), "greatest fixpoint"); }

StateSet iterate_chain(const SetFunction& f, std::size_t steps, const StateSet& start) {
  StateSet x = start;
  for (std::size_t i = 0; i < steps; ++i) x = f(x);
  return x;
}

MonotonicityResult monotone_check(const SetFunction& f, CheckMode mode, std::size_t samples, std::uint64_t seed) {
  const auto& u = f.space();
  const std::size_t n = u.size();
  MonotonicityResult result;
  if (mode == CheckMode::Exhaustive) {
    if (n > 12) throw SizeGateExceeded("exhaustive monotonicity check needs at most 12 states, got " + std::to_string(n));
    const std::uint64_t subsets = std::uint64_t{1} << n;
    const std::uint64_t full = subsets - 1;
    std::vector<std::uint64_t> table(subsets);
    for (std::uint64_t m = 0; m < subsets; ++m) table[m] = f(StateSet::from_mask(u, m)).to_mask();
    for (std::uint64_t s = 0; s < subsets; ++s) {
      const std::uint64_t free_bits = full & ~s;
      // Supersets of s, largest first.
      for (std::uint64_t extra = free_bits;; extra = (extra - 1) & free_bits) {
        const std::uint64_t t = s | extra;
        if ((table[s] & ~table[t]) != 0) {
          result.monotone = false;
          result.witness.emplace(StateSet::from_mask(u, s), StateSet::from_mask(u, t));
          return result;
        }
        if (extra == 0) break;
      }
    }
    return result;
  }

  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);
  for (std::size_t i = 0; i < std::max<std::size_t>(samples, 1); ++i) {
    StateSetBuilder small(u);
    StateSetBuilder large(u);
    for (std::size_t st = 0; st < n; ++st) {
      const bool in_small = coin(rng);
      if (in_small) small.insert(st);
      if (in_small || coin(rng)) large.insert(st);
    }
    auto s = std::move(small).build();
    auto t = std::move(large).build();
    if (!f(s).is_subset_of(f(t))) {
      result.monotone = false;
      result.witness.emplace(std::move(s), std::move(t));
      return result;
    }
  }
  return result;
}

}  // namespace fairb
