#include "orthosteer/sturm.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace orthosteer::sturm {

namespace {

constexpr double kPi = std::numbers::pi;

JetFn power_fn(EndpointPower e) {
  return [e](double t) { return eval_weight(e, Jet::variable(t)); };
}

JetFn constant_fn(double c) {
  return [c](double) { return Jet(c); };
}

}  // namespace

SLProblem problem_for(const BasisElement& b) {
  if (b.domain() != Domain::canonical) {
    throw ArgumentError("SL problems are defined for canonical elements; shift the interval instead");
  }
  const double n = b.index();
  switch (b.family()) {
    case Family::legendre:
      return {power_fn({1.0, 1.0}), constant_fn(0.0), constant_fn(1.0), n * (n + 1.0)};
    case Family::chebyshev_first:
      return {power_fn({0.5, 0.5}), constant_fn(0.0), power_fn({-0.5, -0.5}), n * n};
    case Family::chebyshev_second:
      return {power_fn({1.5, 1.5}), constant_fn(0.0), power_fn({0.5, 0.5}), n * (n + 2.0)};
    case Family::jacobi: {
      const auto [a, c] = *b.jacobi();
      return {power_fn({a + 1.0, c + 1.0}), constant_fn(0.0), power_fn({a, c}),
              n * (n + a + c + 1.0)};
    }
    case Family::trig_sin:
    case Family::trig_cos:
      return {constant_fn(1.0), constant_fn(0.0), constant_fn(1.0), (n * kPi) * (n * kPi)};
  }
  throw ArgumentError("unsupported family");
}

double sl_residual(const SLProblem& prob, const JetFn& y, double t) {
  if (!(t > prob.interval.lo && t < prob.interval.hi)) {
    throw DomainError("SL residual requires t strictly inside the interval");
  }
  const Jet yj = y(t);
  const Jet pj = prob.P(t);
  const double flux_rate = pj.derivative(1) * yj.derivative(1) + pj.value() * yj.derivative(2);
  return flux_rate / prob.w(t).value() + prob.Q(t).value() * yj.value() + prob.lambda * yj.value();
}

double sl_residual(const SLProblem& prob, const BasisElement& y, double t) {
  return sl_residual(prob, as_jet_fn(y), t);
}

double sl_residual(const SLProblem& prob, const InputSignal& y, double t) {
  return sl_residual(prob, as_jet_fn(y), t);
}

std::vector<double> chebyshev_nodes(int n, const Interval& iv) {
  std::vector<double> nodes;
  nodes.reserve(n);
  for (int k = 1; k <= n; ++k) {
    nodes.push_back(iv.mid() + iv.half() * std::cos((2.0 * k - 1.0) * kPi / (2.0 * n)));
  }
  return nodes;
}

double max_residual(const SLProblem& prob, const JetFn& y, int nodes) {
  double worst = 0.0;
  for (double t : chebyshev_nodes(nodes, prob.interval)) {
    worst = std::max(worst, std::fabs(sl_residual(prob, y, t)));
  }
  return worst;
}

JetFn JacobiPairing::k1() const {
  const BasisElement p = jacobi(n, alpha, beta);
  return [p](double t) { return eval_jet(p, t); };
}

JetFn JacobiPairing::k2() const {
  if (n == 0) return constant_fn(0.0);
  const BasisElement p = jacobi(n, alpha, beta);
  const EndpointPower a2w = a2;
  const double lam = lambda;
  return [p, a2w, lam](double t) {
    const Jet a2j = eval_weight(a2w, Jet::variable(t));
    return a2j * eval_jet(p, t).differentiated() * (-1.0 / (2.0 * lam));
  };
}

SLProblem JacobiPairing::k1_problem() const {
  return {power_fn(a2), constant_fn(0.0), power_fn({-a1.p, -a1.q}), 4.0 * lambda * lambda};
}

SLProblem JacobiPairing::k2_problem() const {
  return {power_fn(a1), constant_fn(0.0), power_fn({-a2.p, -a2.q}), 4.0 * lambda * lambda};
}

JacobiPairing jacobi_pairing(double alpha, double beta, int n) {
  if (!(alpha > -1.0 && alpha <= 0.0 && beta > -1.0 && beta <= 0.0)) {
    throw DomainError("Jacobi pairing requires -1 < alpha, beta <= 0");
  }
  if (n < 0) throw ArgumentError("pairing index must be non-negative");
  JacobiPairing jp;
  jp.alpha = alpha;
  jp.beta = beta;
  jp.n = n;
  jp.lambda = 0.5 * std::sqrt(n * (n + alpha + beta + 1.0));
  jp.eta = -alpha - 1.0;
  jp.zeta = -beta - 1.0;
  jp.l = n - jp.eta - jp.zeta - 1.0;
  jp.a1 = {-alpha, -beta};
  jp.a2 = {alpha + 1.0, beta + 1.0};
  return jp;
}

PairCertificate certify_pair(const JacobiPairing& pairing) {
  return {max_residual(pairing.k1_problem(), pairing.k1()),
          max_residual(pairing.k2_problem(), pairing.k2())};
}

}  // namespace orthosteer::sturm
