#pragma once

#include <stdexcept>
#include <string>

namespace hysnet {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed arguments: bad network topology, non-monotone breakpoints,
/// unsorted thresholds and the like.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// An input or curve argument left the admissible horizon [-L, L].
class HorizonError : public Error {
 public:
  HorizonError(const std::string& what, double value, double horizon)
      : Error(what), value_(value), horizon_(horizon) {}

  double value() const noexcept { return value_; }
  double horizon() const noexcept { return horizon_; }

 private:
  double value_;
  double horizon_;
};

/// An iterative procedure hit its iteration cap.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// A state vector lies outside the admissible polytope.
class InfeasibleState : public Error {
 public:
  using Error::Error;
};

/// A curve operation needed a strictly increasing (invertible) curve.
class NotInvertible : public Error {
 public:
  using Error::Error;
};

}  // namespace hysnet
