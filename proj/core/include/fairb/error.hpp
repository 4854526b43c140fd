#pragma once

#include <stdexcept>
#include <string>

namespace fairb {

/// Base class for every structural error raised by the library. Verdicts
/// (an obligation that does not hold) are never reported through exceptions.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two values from different state spaces were combined.
class SpaceMismatch : public Error {
 public:
  SpaceMismatch(const std::string& lhs, const std::string& rhs)
      : Error("state space mismatch: '" + lhs + "' vs '" + rhs + "'"), lhs_(lhs), rhs_(rhs) {}

  const std::string& lhs() const noexcept { return lhs_; }
  const std::string& rhs() const noexcept { return rhs_; }

 private:
  std::string lhs_;
  std::string rhs_;
};

/// Fixpoint iteration did not stabilize within the finite-lattice bound.
class MonotonicityViolation : public Error {
 public:
  using Error::Error;
};

/// An exhaustive check was requested on a space that is too large for it.
class SizeGateExceeded : public Error {
 public:
  using Error::Error;
};

/// A domain object was constructed in violation of its invariants.
class InvalidModel : public Error {
 public:
  using Error::Error;
};

}  // namespace fairb
