#pragma once

// Rest-to-rest attitude maneuvers for g' = hat(omega) g on [0, T]:
// constant rates (cost int |omega|^2), rates c / q(t) (cost int q |omega|^2),
// and the underactuated case omega3 = 1 whose extremals are
//   omega1 = r cos((c - 1) t + phi),  omega2 = -r sin((c - 1) t + phi).
// Plans constrain attitudes only; no angular-rate boundary conditions.

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "orthosteer/dynamics.hpp"

namespace orthosteer {

struct AttitudePlan {
  std::string kind;  // "constant", "weighted_rate" or "underactuated"
  So3Inputs omega;
  double duration = 0.0;
  Rotation g0 = Rotation::Identity();
  Rotation g1 = Rotation::Identity();
  /// Named scalar parameters (e.g. r, phi, c for the underactuated case).
  std::vector<std::pair<std::string, double>> parameters;
  double cost = 0.0;

  Interval interval() const { return {0.0, duration}; }
  double parameter(const std::string& name) const;
};

inline constexpr const char* kAttitudeConvention = "gdot = hat(omega) g";
inline constexpr int kAttitudeSteps = 4000;

/// omega = log(g1 g0^T) / T; cost = T |omega|^2.
AttitudePlan constant_omega_plan(const Rotation& g0, const Rotation& g1, double T,
                                 bool tie_break = false);

/// omega(t) = c / q(t) with q(t) = sum_i q_coeffs[i] t^i > 0 on [0, T] and
/// c int_0^T dt / q = log(g1 g0^T); cost = |c|^2 int_0^T dt / q.
AttitudePlan weighted_rate_plan(const Rotation& g0, const Rotation& g1, double T,
                                const std::vector<double>& q_coeffs, bool tie_break = false);

/// Closed-form endpoint of the underactuated extremal with parameters
/// (r, phi, c) from g0 over [0, T].
Rotation underactuated_endpoint(const Rotation& g0, double r, double phi, double c, double T);

/// Underactuated extremal reaching g1. Levenberg-Marquardt shooting runs on
/// the closed-form endpoint from a fixed list of starts, then polishes on the
/// simulated endpoint (kAttitudeSteps steps). Throws NoConvergenceError
/// with the best Frobenius error when the final error exceeds 1e-8.
AttitudePlan underactuated_plan(const Rotation& g0, const Rotation& g1, double T,
                                int steps = kAttitudeSteps);

/// Residuals of the costate equations along the plan with p = 2 omega
/// (p3 = 2c when omega3 = 1), max over all samples of the trajectory.
double costate_residual(const AttitudePlan& plan, const Trajectory& traj);

/// Residuals of
///   d/dt( q/(c - q) d/dt(q omega1) ) + (c - q) omega1,
///   d/dt( q/(c - q) d/dt(q omega2) ) + (c - q) omega2
/// at t. Throws DomainError when c = q(t).
std::pair<double, double> so3_sl_residual(const JetFn& q, double c, const InputSignal& omega1,
                                          const InputSignal& omega2, double t);

/// q(t) = sum_i coeffs[i] t^i as a jet function.
JetFn polynomial_fn(const std::vector<double>& coeffs);

/// Frobenius norm of a - b.
double frobenius_error(const Rotation& a, const Rotation& b);

}  // namespace orthosteer
