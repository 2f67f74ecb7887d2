#include "orthosteer/optimal_energy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "orthosteer/sturm.hpp"

namespace orthosteer {

namespace {

constexpr double kPi = std::numbers::pi;

Jet weight_jet(const WeightFn& w, const Interval& iv, double t) {
  Jet tau = Jet::variable((t - iv.mid()) / iv.half());
  tau.coeff(1) = 1.0 / iv.half();
  return eval_weight(w, tau);
}

}  // namespace

ChebOptimalSolution cheb_optimal_inputs(double a, double phi, int lambda) {
  if (a == 0.0) throw ArgumentError("displacement a must be nonzero (zero input is optimal)");
  if (!std::isfinite(a)) throw ArgumentError("displacement a must be finite");
  if (lambda < 1) throw ArgumentError("lambda must be a positive integer");
  ChebOptimalSolution sol;
  sol.a = a;
  sol.lambda = lambda;
  const double r = std::sqrt(2.0 * lambda * std::fabs(a) / kPi);
  sol.b1 = r * std::cos(phi);
  sol.b2 = r * std::sin(phi);
  const BasisElement t_even = chebyshev_first(2 * lambda);
  const BasisElement u_odd = chebyshev_second(2 * lambda - 1);
  InputSignal u1{BasisTerm{t_even, sol.b1, true}, BasisTerm{u_odd, sol.b2, false}};
  InputSignal u2{BasisTerm{t_even, sol.b2, true}, BasisTerm{u_odd, -sol.b1, false}};
  if (a < 0.0) std::swap(u1, u2);
  sol.u1 = std::move(u1);
  sol.u2 = std::move(u2);
  sol.cost = lambda * std::fabs(a);
  return sol;
}

double weighted_cost(const InputSignal& u1, const InputSignal& u2, const WeightedCost& cost) {
  const InputSignal* f1[] = {&u1, &u1};
  const InputSignal* f2[] = {&u2, &u2};
  const double j1 = u1.is_zero() ? 0.0 : integrate_product(f1, cost.a1, cost.interval);
  const double j2 = u2.is_zero() ? 0.0 : integrate_product(f2, cost.a2, cost.interval);
  return 0.5 * (j1 + j2);
}

std::pair<double, double> el_residual(const InputSignal& u1, const InputSignal& u2,
                                      const WeightedCost& cost, double lambda, double t) {
  const Interval& iv = cost.interval;
  if (!(t > iv.lo && t < iv.hi)) throw DomainError("residual requires t strictly inside the interval");
  const Jet k1 = weight_jet(cost.a1, iv, t) * eval_jet(u1, t);
  const Jet k2 = weight_jet(cost.a2, iv, t) * eval_jet(u2, t);
  return {k1.derivative(1) + 2.0 * lambda * eval(u2, t),
          k2.derivative(1) - 2.0 * lambda * eval(u1, t)};
}

double max_el_residual(const InputSignal& u1, const InputSignal& u2, const WeightedCost& cost,
                       double lambda, int nodes) {
  double worst = 0.0;
  for (double t : sturm::chebyshev_nodes(nodes, cost.interval)) {
    const auto [r1, r2] = el_residual(u1, u2, cost, lambda, t);
    worst = std::max({worst, std::fabs(r1), std::fabs(r2)});
  }
  return worst;
}

SteeringPlan cheb_optimal_plan(const NhiState& x0, const NhiState& xf, double phi) {
  SteeringPlan plan;
  plan.system = "nhi";
  plan.labels = {"x1", "x2", "x3"};
  plan.start = {x0.x1, x0.x2, x0.x3};
  plan.target = {xf.x1, xf.x2, xf.x3};
  plan.closed_form = "chebyshev_optimal";
  const WeightedCost wc = WeightedCost::chebyshev();

  NhiState s = x0;
  double total = 0.0;
  const double d1 = xf.x1 - s.x1, d2 = xf.x2 - s.x2;
  if (d1 != 0.0 || d2 != 0.0) {
    PlanPhase ph;
    ph.interval = kCanonical;
    ph.inputs = {InputSignal::constant(d1 / 2.0), InputSignal::constant(d2 / 2.0)};
    s.x3 += s.x1 * d2 - s.x2 * d1;
    s.x1 = xf.x1;
    s.x2 = xf.x2;
    ph.predicted_endpoint = {s.x1, s.x2, s.x3};
    if (d1 != 0.0) ph.moves.push_back("x1");
    if (d2 != 0.0) ph.moves.push_back("x2");
    ph.moves.push_back("x3");
    if (d1 == 0.0) ph.fixes.push_back("x1");
    if (d2 == 0.0) ph.fixes.push_back("x2");
    total += weighted_cost(ph.inputs[0], ph.inputs[1], wc);
    plan.phases.push_back(std::move(ph));
  }
  const double a = xf.x3 - s.x3;
  if (a != 0.0) {
    const ChebOptimalSolution sol = cheb_optimal_inputs(a, phi);
    PlanPhase ph;
    ph.interval = kCanonical;
    ph.inputs = {sol.u1, sol.u2};
    s.x3 = xf.x3;
    ph.predicted_endpoint = {s.x1, s.x2, s.x3};
    ph.moves = {"x3"};
    ph.fixes = {"x1", "x2"};
    total += sol.cost;
    plan.phases.push_back(std::move(ph));
  }
  plan.predicted_endpoint = {s.x1, s.x2, s.x3};
  plan.cost = total;
  return plan;
}

}  // namespace orthosteer
