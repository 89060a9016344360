#pragma once

#include <stdexcept>
#include <string>

namespace ldproj {

/// Argument outside the mathematical domain of an operation (p < 1, x <= 0 for log-gamma, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Caller misuse: wrong regime for an operation, non-positive tolerance, empty grid.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A closed form hits a degenerate configuration (e.g. alpha_{2,1}, the p = 2 covariance).
/// Signals an infinite-rate / deterministic-limit regime rather than a bug.
class DegeneracyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Iterative numerics failed to converge; the message carries diagnostics.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ldproj
