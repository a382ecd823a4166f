#pragma once

#include <stdexcept>
#include <string>

namespace tsscore {

/// Raised when a configuration or user input violates a documented bound.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parameter outside the stationarity/invertibility region, or a
/// non-positive variance.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Data that cannot support the requested statistic (zero denominators,
/// vanishing variability).
class DegenerateDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SingularMatrixError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedKindError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class OptimizationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tsscore
