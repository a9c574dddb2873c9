#pragma once

#include <stdexcept>
#include <string>

namespace gumbelscale {

// Invalid argument values: non-positive scales, out-of-range indices, q outside
// the range of a cdf and so on.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// An asymptotic formula was asked for at an argument below the point where
// its own prefactor assumptions hold. The cutoff is carried so callers can
// report it.
class PreconditionError : public DomainError {
 public:
  PreconditionError(const std::string& what, double cutoff)
      : DomainError(what), cutoff_(cutoff) {}

  double cutoff() const noexcept { return cutoff_; }

 private:
  double cutoff_;
};

// An operation was requested for a TailModel variant that does not support it.
class UnsupportedVariant : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Bracketing failures, panel budget exhaustion, non-PSD factorizations.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gumbelscale
