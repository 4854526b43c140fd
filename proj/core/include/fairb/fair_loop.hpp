#pragma once

#include <string>
#include <vector>

#include "fairb/command.hpp"
#include "fairb/fixpoint.hpp"

namespace fairb {

/// The fair iteration X(q) = not q ==> ((rest ; X(q)) dovetail helpful):
/// keep running `rest` until the exit set is reached, while `helpful` is
/// guaranteed to get its turn.
class FairLoop {
 public:
  FairLoop(StateSet exit, Command helpful, Command rest);

  const StateSet& exit() const noexcept { return exit_; }
  const Command& helpful() const noexcept { return helpful_; }
  const Command& rest() const noexcept { return rest_; }
  const StateSpace& space() const noexcept { return exit_.space(); }

 private:
  StateSet exit_;
  Command helpful_;
  Command rest_;
};

/// x -> exit | (str(helpful)(r) & str(rest)(x)), built as the command
/// not exit ==> (str(helpful)(r) | rest).
SetFunction loop_functional(const FairLoop& loop, const StateSet& r);
/// Greatest fixpoint of loop_functional(loop, r).
StateSet loop_liberal(const FairLoop& loop, const StateSet& r);
/// Termination set: where iterating `rest` reaches exit | grd(helpful).
StateSet loop_pre(const FairLoop& loop);
StateSet loop_str(const FairLoop& loop, const StateSet& r);
/// Complement of the least fixpoint of loop_functional(loop, empty).
StateSet loop_guard(const FairLoop& loop);

enum class LemmaOutcome { Holds, Violated, HypothesisFailed };

struct LemmaVerdict {
  LemmaOutcome outcome = LemmaOutcome::Holds;
  /// Which hypothesis failed, or a description of the violated conclusion.
  std::string detail;
  std::vector<std::size_t> witnesses;

  bool holds() const noexcept { return outcome == LemmaOutcome::Holds; }
};

/// grd(helpful) | exit ⊆ loop_pre, given pre(helpful) = pre(rest) = u.
LemmaVerdict check_termination_lemma(const FairLoop& loop);

/// p | exit ⊆ loop_str(loop, exit), given the termination hypotheses and
/// p - exit ⊆ str(rest)(p | exit), ⊆ grd(helpful), ⊆ str(helpful)(exit).
LemmaVerdict check_total_correctness(const FairLoop& loop, const StateSet& p);

}  // namespace fairb
