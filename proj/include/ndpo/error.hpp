#pragma once

#include <stdexcept>
#include <string>

namespace ndpo {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Physical rates or dimensionless parameters outside their admissible range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// A formula was asked for outside the regime where it holds (e.g. the
// below-threshold closed form at r >= 1).
class DomainError : public Error {
 public:
  using Error::Error;
};

class UndefinedVisibilityError : public DomainError {
 public:
  using DomainError::DomainError;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double estimate, double error_estimate)
      : Error(what), estimate_(estimate), error_estimate_(error_estimate) {}

  double estimate() const noexcept { return estimate_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double estimate_;
  double error_estimate_;
};

// Monte Carlo ensemble unusable (too many divergent trajectories, ...).
class StatisticsError : public Error {
 public:
  using Error::Error;
};

class ResourceError : public Error {
 public:
  using Error::Error;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace ndpo
