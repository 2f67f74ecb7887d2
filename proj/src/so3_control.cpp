#include "orthosteer/so3_control.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <unsupported/Eigen/NonLinearOptimization>
#include <unsupported/Eigen/NumericalDiff>

namespace orthosteer {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kShootingTol = 1e-8;

void check_duration(double T) {
  if (!(T > 0.0) || !std::isfinite(T)) throw ArgumentError("duration T must be positive");
}

So3Inputs constant_inputs(const so3::Vec3& w) {
  return {InputSignal::constant(w.x()), InputSignal::constant(w.y()), InputSignal::constant(w.z())};
}

So3Inputs underactuated_inputs(double r, double phi, double c) {
  return {InputSignal{SinusoidTerm{r, c - 1.0, phi}},
          InputSignal{SinusoidTerm{r, c - 1.0, phi + 0.5 * kPi}}, InputSignal::constant(1.0)};
}

struct ShootingFunctor {
  using Scalar = double;
  enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };
  using InputType = Eigen::VectorXd;
  using ValueType = Eigen::VectorXd;
  using JacobianType = Eigen::MatrixXd;

  Rotation g0, g1;
  double T;
  /// 0 selects the closed-form endpoint.
  int steps;

  int inputs() const { return 3; }
  int values() const { return 3; }

  Rotation endpoint(const Eigen::VectorXd& x) const {
    // x = (r cos phi, r sin phi, c): smooth through r = 0.
    const double r = std::hypot(x(0), x(1));
    const double phi = std::atan2(x(1), x(0));
    if (steps == 0) return underactuated_endpoint(g0, r, phi, x(2), T);
    return so3_terminal(integrate_so3(underactuated_inputs(r, phi, x(2)), g0, {0.0, T}, steps));
  }

  int operator()(const Eigen::VectorXd& x, Eigen::VectorXd& f) const {
    const Rotation e = endpoint(x) * g1.transpose();
    const Rotation skew = 0.5 * (e - e.transpose());
    f = Eigen::Vector3d{skew(2, 1), skew(0, 2), skew(1, 0)};
    return 0;
  }
};

}  // namespace

double AttitudePlan::parameter(const std::string& name) const {
  for (const auto& [k, v] : parameters) {
    if (k == name) return v;
  }
  throw ArgumentError("plan has no parameter '" + name + "'");
}

double frobenius_error(const Rotation& a, const Rotation& b) { return (a - b).norm(); }

AttitudePlan constant_omega_plan(const Rotation& g0, const Rotation& g1, double T, bool tie_break) {
  check_duration(T);
  const so3::Vec3 w = so3::log(g1 * g0.transpose(), tie_break) / T;
  AttitudePlan plan;
  plan.kind = "constant";
  plan.omega = constant_inputs(w);
  plan.duration = T;
  plan.g0 = g0;
  plan.g1 = g1;
  plan.parameters = {{"w1", w.x()}, {"w2", w.y()}, {"w3", w.z()}};
  plan.cost = T * w.squaredNorm();
  return plan;
}

JetFn polynomial_fn(const std::vector<double>& coeffs) {
  return [coeffs](double t) {
    const Jet tj = Jet::variable(t);
    Jet acc;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * tj + Jet(*it);
    return acc;
  };
}

AttitudePlan weighted_rate_plan(const Rotation& g0, const Rotation& g1, double T,
                                const std::vector<double>& q_coeffs, bool tie_break) {
  check_duration(T);
  if (q_coeffs.empty()) throw ArgumentError("q needs at least one coefficient");
  const JetFn q = polynomial_fn(q_coeffs);
  constexpr int kChecks = 1000;
  for (int i = 0; i <= kChecks; ++i) {
    if (!(q(T * i / kChecks).value() > 0.0)) throw DomainError("q(t) must be positive on [0, T]");
  }
  const InputSignal inv_q{ReciprocalTerm{1.0, q_coeffs}};
  const double iq = integral(inv_q, {0.0, T});
  const so3::Vec3 c = so3::log(g1 * g0.transpose(), tie_break) / iq;

  AttitudePlan plan;
  plan.kind = "weighted_rate";
  plan.omega = {InputSignal{ReciprocalTerm{c.x(), q_coeffs}},
                InputSignal{ReciprocalTerm{c.y(), q_coeffs}},
                InputSignal{ReciprocalTerm{c.z(), q_coeffs}}};
  plan.duration = T;
  plan.g0 = g0;
  plan.g1 = g1;
  plan.parameters = {{"c1", c.x()}, {"c2", c.y()}, {"c3", c.z()}};
  for (std::size_t i = 0; i < q_coeffs.size(); ++i) {
    plan.parameters.emplace_back("q" + std::to_string(i), q_coeffs[i]);
  }
  plan.cost = c.squaredNorm() * iq;
  return plan;
}

Rotation underactuated_endpoint(const Rotation& g0, double r, double phi, double c, double T) {
  // h = Rz(psi) g satisfies h' = hat(r, 0, c) h with psi = (c - 1) t + phi.
  const double psi_t = (c - 1.0) * T + phi;
  return so3::rot_z(-psi_t) * so3::exp(T * so3::Vec3{r, 0.0, c}) * so3::rot_z(phi) * g0;
}

static Eigen::VectorXd run_lm(const ShootingFunctor& fn, Eigen::VectorXd x) {
  Eigen::NumericalDiff<ShootingFunctor, Eigen::Central> nd(fn);
  Eigen::LevenbergMarquardt<Eigen::NumericalDiff<ShootingFunctor, Eigen::Central>> lm(nd);
  lm.parameters.maxfev = 100 * 7;  // 100 iterations of a central-difference Jacobian
  lm.parameters.ftol = 1e-16;
  lm.parameters.xtol = 1e-16;
  lm.minimize(x);
  return x;
}

AttitudePlan underactuated_plan(const Rotation& g0, const Rotation& g1, double T, int steps) {
  check_duration(T);
  const ShootingFunctor exact{g0, g1, T, 0};
  const ShootingFunctor fn{g0, g1, T, steps};
  auto error_of = [&](const ShootingFunctor& f, const Eigen::VectorXd& v) {
    return frobenius_error(f.endpoint(v), g1);
  };

  // Solve on the closed-form endpoint first, from the nominal start and then
  // a fixed fan of (c, phi) starts, and polish the first root found on the
  // simulated endpoint.
  const double c0 = 1.0 + 2.0 * kPi / T;
  const double r0 = so3::log(g1 * g0.transpose() * so3::rot_z(-T), true).norm() / T;
  std::vector<Eigen::VectorXd> starts;
  starts.push_back(Eigen::Vector3d{r0, 0.0, c0});
  for (double dc : {0.0, 1.0, -1.0, 0.5, 2.0, -0.5, 3.0}) {
    for (int k = 0; k < 4; ++k) {
      for (double rs : {1.0, 2.0, 0.5}) {
        const double phi = 0.5 * kPi * k;
        const double rr = std::max(rs * r0, 1e-3);
        starts.push_back(Eigen::Vector3d{rr * std::cos(phi), rr * std::sin(phi), c0 + dc * kPi / T});
      }
    }
  }

  Eigen::VectorXd best = starts.front();
  double best_err = error_of(fn, best);
  for (const Eigen::VectorXd& x0 : starts) {
    if (best_err < kShootingTol) break;
    Eigen::VectorXd x = run_lm(exact, x0);
    if (error_of(exact, x) >= kShootingTol) continue;
    if (error_of(fn, x) >= kShootingTol) x = run_lm(fn, x);
    const double err = error_of(fn, x);
    if (err < best_err) {
      best = x;
      best_err = err;
    }
  }
  if (best_err >= kShootingTol) {
    throw NoConvergenceError("underactuated shooting did not converge", best_err);
  }

  const double r = std::hypot(best(0), best(1));
  const double phi = r == 0.0 ? 0.0 : std::atan2(best(1), best(0));
  const double c = best(2);
  AttitudePlan plan;
  plan.kind = "underactuated";
  plan.omega = underactuated_inputs(r, phi, c);
  plan.duration = T;
  plan.g0 = g0;
  plan.g1 = g1;
  plan.parameters = {{"r", r}, {"phi", phi}, {"c", c}};
  plan.cost = 0.5 * r * r * T;
  return plan;
}

double costate_residual(const AttitudePlan& plan, const Trajectory& traj) {
  const bool under = plan.kind == "underactuated";
  std::vector<double> q_coeffs{1.0};
  if (plan.kind == "weighted_rate") {
    q_coeffs.clear();
    for (const auto& [k, v] : plan.parameters) {
      if (k.size() > 1 && k[0] == 'q') q_coeffs.push_back(v);
    }
  }
  const JetFn q = polynomial_fn(q_coeffs);
  double worst = 0.0;
  for (double t : traj.t) {
    const Jet qj = q(t);
    std::array<Jet, 3> p;
    so3::Vec3 w;
    for (int i = 0; i < 3; ++i) {
      const Jet wj = eval_jet(plan.omega[i], t);
      w(i) = wj.value();
      p[i] = 2.0 * qj * wj;
    }
    if (under) p[2] = Jet(2.0 * plan.parameter("c"));
    const so3::Vec3 pv{p[0].value(), p[1].value(), p[2].value()};
    const so3::Vec3 rhs = w.cross(pv);
    for (int i = 0; i < 3; ++i) worst = std::max(worst, std::fabs(p[i].derivative(1) - rhs(i)));
  }
  return worst;
}

std::pair<double, double> so3_sl_residual(const JetFn& q, double c, const InputSignal& omega1,
                                          const InputSignal& omega2, double t) {
  const Jet qj = q(t);
  const Jet gap = Jet(c) - qj;
  if (std::fabs(gap.value()) <= 1e-14 * std::max(1.0, std::fabs(c))) {
    throw DomainError("c - q(t) vanishes: the equation is singular at this t");
  }
  auto residual = [&](const InputSignal& w) {
    const Jet wj = eval_jet(w, t);
    const Jet flux = qj / gap * (qj * wj).differentiated();
    return flux.derivative(1) + gap.value() * wj.value();
  };
  return {residual(omega1), residual(omega2)};
}

}  // namespace orthosteer
