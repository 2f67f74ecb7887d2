#pragma once

// Sturm-Liouville problems (1/w) (P y')' + Q y = -lambda y, residual
// certification of candidate eigenfunctions, and the Jacobi weighted-cost
// pairing that turns the minimum-energy conditions into two SL equations.

#include <vector>

#include "orthosteer/orthopoly.hpp"
#include "orthosteer/signal.hpp"

namespace orthosteer::sturm {

struct SLProblem {
  JetFn P;
  JetFn Q;
  JetFn w;
  double lambda = 0.0;
  Interval interval = kCanonical;
};

/// SL problem whose n-th eigenfunction is the given canonical basis element:
/// Legendre ((1 - t^2), 0, 1, n(n+1)), Chebyshev first (sqrt(1 - t^2), 0,
/// (1 - t^2)^(-1/2), n^2), Chebyshev second ((1 - t^2)^(3/2), 0, sqrt(1 - t^2),
/// n(n+2)), Jacobi, and the trig families (1, 0, 1, (n pi)^2).
SLProblem problem_for(const BasisElement& b);

/// (1/w) (P y')' + Q y + lambda y at t. t must be strictly inside the interval.
double sl_residual(const SLProblem& prob, const JetFn& y, double t);
double sl_residual(const SLProblem& prob, const BasisElement& y, double t);
double sl_residual(const SLProblem& prob, const InputSignal& y, double t);

/// n Chebyshev-spaced points strictly inside iv: cos((2k - 1) pi / (2n)).
std::vector<double> chebyshev_nodes(int n, const Interval& iv = kCanonical);

/// Max |sl_residual| over chebyshev_nodes(nodes).
double max_residual(const SLProblem& prob, const JetFn& y, int nodes = 50);

struct JacobiPairing {
  double alpha = 0.0;
  double beta = 0.0;
  int n = 0;
  double lambda = 0.0;
  double eta = 0.0;
  double zeta = 0.0;
  double l = 0.0;
  /// a1 = (1 - t)^(-alpha) (1 + t)^(-beta)
  EndpointPower a1;
  /// a2 = (1 - t)^(alpha + 1) (1 + t)^(beta + 1)
  EndpointPower a2;

  /// k1 = a1 u1 = P_n^(alpha, beta).
  JetFn k1() const;
  /// k2 = a2 u2 = -(a2 / (2 lambda)) k1', from the first optimality condition.
  /// Identically zero when n = 0.
  JetFn k2() const;
  /// SL problem d/dt(a2 k1') = -4 lambda^2 k1 / a1.
  SLProblem k1_problem() const;
  /// SL problem d/dt(a1 k2') = -4 lambda^2 k2 / a2.
  SLProblem k2_problem() const;
};

/// Requires -1 < alpha, beta <= 0 and n >= 0.
JacobiPairing jacobi_pairing(double alpha, double beta, int n);

struct PairCertificate {
  double residual_k1 = 0.0;
  double residual_k2 = 0.0;
};

/// Max interior residual of both SL equations over 50 Chebyshev nodes.
PairCertificate certify_pair(const JacobiPairing& pairing);

}  // namespace orthosteer::sturm
