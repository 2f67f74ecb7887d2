#pragma once

// Minimum-energy steering of x3 under the weighted cost
//   J = 1/2 int (a1 u1^2 + a2 u2^2) dt
// with a1 = a2 = sqrt(1 - t^2) on [-1, 1]. The extremals are
//   u1 = b1 T_{2l} / sqrt(1 - t^2) + b2 U_{2l-1},
//   u2 = b2 T_{2l} / sqrt(1 - t^2) - b1 U_{2l-1},
// which move x3 by (b1^2 + b2^2) pi / (2 l) at cost (b1^2 + b2^2) pi / 2;
// l = 1 is optimal.

#include <utility>

#include "orthosteer/steering.hpp"

namespace orthosteer {

/// Diagonal weights a_i(tau) = (1 - tau)^p (1 + tau)^q in the canonical
/// variable of `interval`.
struct WeightedCost {
  WeightFn a1;
  WeightFn a2;
  Interval interval = kCanonical;

  /// a1 = a2 = sqrt(1 - t^2) on [-1, 1].
  static WeightedCost chebyshev() { return {{0.5, 0.5}, {0.5, 0.5}, kCanonical}; }
  /// a1 = a2 = 1.
  static WeightedCost unit(const Interval& iv = kCanonical) { return {{}, {}, iv}; }
};

struct ChebOptimalSolution {
  double a = 0.0;
  double b1 = 0.0;
  double b2 = 0.0;
  int lambda = 1;
  InputSignal u1;
  InputSignal u2;
  /// Predicted weighted cost, lambda |a|.
  double cost = 0.0;
};

/// Extremal with (b1, b2) = r (cos phi, sin phi), (b1^2 + b2^2) pi / 2 = lambda |a|.
/// For a < 0 the two channels are swapped. Throws ArgumentError for a = 0 or
/// lambda < 1.
ChebOptimalSolution cheb_optimal_inputs(double a, double phi = 0.0, int lambda = 1);

double weighted_cost(const InputSignal& u1, const InputSignal& u2, const WeightedCost& cost);

/// Residuals of the first-order necessary conditions
///   r1 = d/dt(a1 u1) + 2 lambda u2,  r2 = d/dt(a2 u2) - 2 lambda u1.
std::pair<double, double> el_residual(const InputSignal& u1, const InputSignal& u2,
                                      const WeightedCost& cost, double lambda, double t);

/// Max |r1|, |r2| over 50 Chebyshev-spaced interior nodes.
double max_el_residual(const InputSignal& u1, const InputSignal& u2, const WeightedCost& cost,
                       double lambda, int nodes = 50);

/// Plan from x0 to xf on [-1, 1]: constant inputs for (x1, x2) if needed,
/// then the optimal extremal for the remaining x3 change. Marked as
/// closed_form "chebyshev_optimal"; cost is the total weighted cost.
SteeringPlan cheb_optimal_plan(const NhiState& x0, const NhiState& xf, double phi = 0.0);

}  // namespace orthosteer
