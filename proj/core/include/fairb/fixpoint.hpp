#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>

#include "fairb/sets.hpp"

namespace fairb {

/// A total mapping from subsets of a space to subsets of the same space.
/// The wrapped callable must be pure.
class SetFunction {
 public:
  using Fn = std::function<StateSet(const StateSet&)>;

  SetFunction(StateSpace space, Fn fn) : space_(std::move(space)), fn_(std::move(fn)) {}

  const StateSpace& space() const noexcept { return space_; }
  StateSet operator()(const StateSet& x) const;

  static SetFunction identity(const StateSpace& space);
  static SetFunction constant(StateSet value);

 private:
  StateSpace space_;
  Fn fn_;
};

/// Least fixpoint by ascending iteration from the empty set. Throws
/// MonotonicityViolation if the iteration does not stabilize within
/// 2^size + 1 steps.
StateSet lfp(const SetFunction& f);
/// Greatest fixpoint by descending iteration from the full set.
StateSet gfp(const SetFunction& f);
/// f applied `steps` times to `start`.
StateSet iterate_chain(const SetFunction& f, std::size_t steps, const StateSet& start);

enum class CheckMode { Exhaustive, Sampled };

struct MonotonicityResult {
  bool monotone = true;
  std::optional<std::pair<StateSet, StateSet>> witness;  // (s, t) with s ⊆ t and f(s) ⊄ f(t)
};

/// Exhaustive mode enumerates every pair s ⊆ t (space size <= 12); sampled
/// mode draws `samples` random pairs.
MonotonicityResult monotone_check(const SetFunction& f, CheckMode mode, std::size_t samples = 256,
                                  std::uint64_t seed = 0);

}  // namespace fairb
