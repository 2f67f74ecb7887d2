#include "orthosteer/steering.hpp"

#include <algorithm>
#include <cmath>

namespace orthosteer {

namespace {

constexpr double kMinCoupling = 1e-12;

Domain domain_for(const Interval& iv) {
  if (iv == kCanonical) return Domain::canonical;
  if (iv == kShifted) return Domain::shifted;
  throw ArgumentError("plan interval must be [-1, 1] or [0, 1]");
}

std::vector<std::string> gnhi_labels(int m) {
  std::vector<std::string> labels;
  for (int i = 0; i < m; ++i) labels.push_back("x" + std::to_string(i + 1));
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      labels.push_back("x" + std::to_string(i + 1) + std::to_string(j + 1));
    }
  }
  return labels;
}

double unit_coupling(const PairSpec& pair, const Interval& iv) {
  const double d = coupling_displacement(pair.odd_signal(), pair.even_signal(), iv);
  if (std::fabs(d) < kMinCoupling) {
    throw PlannerError("basis pair produces no coupling displacement on this interval");
  }
  return d;
}

std::vector<std::string> complement(const std::vector<std::string>& all,
                                    const std::vector<std::string>& moved) {
  std::vector<std::string> out;
  for (const auto& l : all) {
    if (std::find(moved.begin(), moved.end(), l) == moved.end()) out.push_back(l);
  }
  return out;
}

// Constant inputs taking the base coordinates from s to the targets.
// Updates s in place (including the coupling coordinates).
PlanPhase constant_phase(GnhiState& s, const GnhiState& sf, const Interval& iv,
                         const std::vector<std::string>& labels) {
  const int m = s.m();
  const double T = iv.length();
  PlanPhase ph;
  ph.interval = iv;
  std::vector<double> dx(m);
  for (int i = 0; i < m; ++i) {
    dx[i] = sf.x(i) - s.x(i);
    ph.inputs.push_back(InputSignal::constant(dx[i] / T));
  }
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      // x_i = x_i0 + c_i (t - lo) makes the quadratic terms cancel.
      s.xx(i, j) += s.x(i) * dx[j] - s.x(j) * dx[i];
    }
  }
  for (int i = 0; i < m; ++i) {
    s.x(i) = sf.x(i);
    if (dx[i] != 0.0) ph.moves.push_back(labels[i]);
  }
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      if (dx[i] != 0.0 || dx[j] != 0.0) {
        // Coupling coordinates may drift while the base moves.
        ph.moves.push_back(labels[s.pair_index(i, j) + m]);
      }
    }
  }
  ph.fixes = complement(labels, ph.moves);
  ph.predicted_endpoint = s.flatten();
  return ph;
}

}  // namespace

std::vector<std::string> steering_families() {
  return {"legendre", "chebyshev_first", "chebyshev_second", "jacobi", "trig"};
}

PairSpec make_pair(const std::string& family, const Interval& iv,
                   std::optional<std::pair<int, int>> indices,
                   std::optional<JacobiParams> jacobi_params) {
  const Domain d = domain_for(iv);
  if (family == "trig") {
    const auto [ns, nc] = indices.value_or(std::pair{1, 1});
    if (ns < 1 || nc < 1) throw ArgumentError("trig pair indices must be >= 1");
    return {trig_sin(ns, d), trig_cos(nc, d), false};
  }
  auto [a, b] = indices.value_or(std::pair{1, 2});
  if (a == 0 || b == 0) throw ArgumentError("the constant element cannot be part of a steering pair");
  auto build = [&](int n) {
    const Family f = family_from_string(family);
    switch (f) {
      case Family::legendre: return legendre(n, d);
      case Family::chebyshev_first: return chebyshev_first(n, d);
      case Family::chebyshev_second: return chebyshev_second(n, d);
      case Family::jacobi: {
        const JacobiParams p = jacobi_params.value_or(JacobiParams{});
        return jacobi(n, p.alpha, p.beta, d);
      }
      default: throw ArgumentError("use family \"trig\" for the trigonometric pair");
    }
  };
  BasisElement ea = build(a), eb = build(b);
  const int pa = parity(ea), pb = parity(eb);
  if (pa == 0 || pb == 0) {
    throw ArgumentError("pair elements need a definite parity (Jacobi requires alpha = beta)");
  }
  if (pa == pb) throw ArgumentError("steering pair must consist of one even and one odd element");
  if (pa > 0) std::swap(ea, eb);
  const bool weighted = ea.family() != Family::legendre;
  return {ea, eb, weighted};
}

int SteeringPlan::channels() const {
  if (system == "nhi") return 2;
  // n = m + m(m - 1)/2
  const int n = static_cast<int>(labels.size());
  int m = 2;
  while (m + m * (m - 1) / 2 < n) ++m;
  return m;
}

std::pair<double, double> scale_pair(const InputSignal& u1, const InputSignal& u2, double target,
                                     const Interval& iv) {
  const double d = coupling_displacement(u1, u2, iv);
  if (std::fabs(d) < kMinCoupling) throw PlannerError("inputs produce no coupling displacement");
  if (target == 0.0) return {0.0, 0.0};
  const double r = target / d;
  const double s = std::sqrt(std::fabs(r));
  return r > 0.0 ? std::pair{s, s} : std::pair{s, -s};
}

SteeringPlan plan_nhi(const NhiState& x0, const NhiState& xf, const PairSpec& pair,
                      const Interval& iv) {
  GnhiState s0(2), sf(2);
  s0.x(0) = x0.x1;
  s0.x(1) = x0.x2;
  s0.xx(0, 1) = x0.x3;
  sf.x(0) = xf.x1;
  sf.x(1) = xf.x2;
  sf.xx(0, 1) = xf.x3;
  SteeringPlan plan = plan_gnhi(s0, sf, pair, iv);
  plan.system = "nhi";
  plan.labels = {"x1", "x2", "x3"};
  for (auto& ph : plan.phases) {
    for (auto* set : {&ph.moves, &ph.fixes}) {
      for (auto& l : *set) {
        if (l == "x12") l = "x3";
      }
    }
  }
  return plan;
}

SteeringPlan plan_gnhi(const GnhiState& s0, const GnhiState& sf, const PairSpec& pair,
                       const Interval& iv) {
  const int m = s0.m();
  if (sf.m() != m) throw ArgumentError("start and target have different channel counts");
  for (double v : sf.flatten()) {
    if (!std::isfinite(v)) throw ArgumentError("target coordinates must be finite");
  }
  domain_for(iv);

  SteeringPlan plan;
  plan.system = "gnhi";
  plan.labels = gnhi_labels(m);
  plan.start = s0.flatten();
  plan.target = sf.flatten();

  GnhiState s = s0;
  bool base_moves = false;
  for (int i = 0; i < m; ++i) base_moves = base_moves || sf.x(i) != s.x(i);
  if (base_moves) plan.phases.push_back(constant_phase(s, sf, iv, plan.labels));

  std::optional<double> d;
  for (int i = 0; i + 1 < m; ++i) {
    std::vector<double> delta(m, 0.0);
    double worst = 0.0;
    int active = 0;
    for (int k = i + 1; k < m; ++k) {
      delta[k] = sf.xx(i, k) - s.xx(i, k);
      if (delta[k] != 0.0) ++active;
      worst = std::max(worst, std::fabs(delta[k]));
    }
    if (active == 0) continue;
    if (!d) d = unit_coupling(pair, iv);

    PlanPhase ph;
    ph.interval = iv;
    ph.inputs.assign(m, InputSignal{});
    const double si = std::sqrt(worst / std::fabs(*d));
    if (i + 2 == m && delta[i + 1] / *d < 0.0) {
      // Single target with the wrong sign: swap the roles of the two channels.
      ph.inputs[i] = pair.even_signal(si);
      ph.inputs[i + 1] = pair.odd_signal(si);
    } else {
      ph.inputs[i] = pair.odd_signal(si);
      for (int k = i + 1; k < m; ++k) {
        if (delta[k] != 0.0) ph.inputs[k] = pair.even_signal(delta[k] / (*d * si));
      }
    }
    for (int k = i + 1; k < m; ++k) {
      s.xx(i, k) = sf.xx(i, k);
      if (delta[k] != 0.0) ph.moves.push_back(plan.labels[s.pair_index(i, k) + m]);
    }
    ph.fixes = complement(plan.labels, ph.moves);
    ph.predicted_endpoint = s.flatten();
    plan.phases.push_back(std::move(ph));
  }
  plan.predicted_endpoint = s.flatten();
  return plan;
}

Trajectory simulate_plan(const SteeringPlan& plan, int steps_per_phase) {
  const int m = plan.channels();
  Trajectory out;
  std::vector<double> state = plan.start;
  double offset = 0.0;
  if (plan.phases.empty()) {
    // Nothing to do: a single zero-input phase on the canonical interval.
    std::vector<InputSignal> zero(m);
    PlanPhase idle{kCanonical, zero, plan.start, {}, plan.labels};
    SteeringPlan p = plan;
    p.phases.push_back(idle);
    return simulate_plan(p, steps_per_phase);
  }
  for (const PlanPhase& ph : plan.phases) {
    Trajectory seg;
    if (plan.system == "nhi") {
      seg = integrate_nhi({ph.inputs.at(0), ph.inputs.at(1)}, {state[0], state[1], state[2]},
                          ph.interval, steps_per_phase);
    } else {
      seg = integrate_gnhi(ph.inputs, GnhiState::unflatten(m, state), ph.interval,
                           steps_per_phase);
    }
    const double shift = offset - ph.interval.lo;
    for (double& t : seg.t) t += shift;
    offset += ph.interval.length();
    state = seg.terminal();
    out.append(seg);
  }
  return out;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw ArgumentError("state sizes differ");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::fabs(a[i] - b[i]));
  return worst;
}

}  // namespace orthosteer
