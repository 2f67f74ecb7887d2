#pragma once

#include <stdexcept>
#include <string>

namespace orthosteer {

/// Base of every error raised by the library. The CLI maps all of these to
/// exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (t outside the
/// interval, evaluation at a singular endpoint, Jacobi parameters out of range).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Request is well-posed but beyond what the implementation supports
/// (index above the evaluation cap, singular input on an unsupported interval).
class CapabilityError : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent arguments (channel count mismatch, bad pairing).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Integrand is not absolutely integrable on the requested interval.
class IntegrabilityError : public Error {
 public:
  using Error::Error;
};

/// A planner could not build a plan (e.g. a pair that produces no coupling).
class PlannerError : public Error {
 public:
  using Error::Error;
};

/// Iterative solver gave up. Carries the best residual reached.
class NoConvergenceError : public Error {
 public:
  NoConvergenceError(const std::string& what, double best_residual)
      : Error(what + " (best residual " + std::to_string(best_residual) + ")"),
        best_residual_(best_residual) {}
  double best_residual() const { return best_residual_; }

 private:
  double best_residual_;
};

}  // namespace orthosteer
