#include "orthosteer/dynamics.hpp"

#include <cmath>

#include "orthosteer/quadrature.hpp"

namespace orthosteer {

namespace {

using Vec = std::vector<double>;

void check_steps(int steps) {
  if (steps < kMinSteps) {
    throw ArgumentError("steps must be >= " + std::to_string(kMinSteps));
  }
}

// Classical RK4 in the integration parameter. rhs(sigma, x, dx).
template <class Rhs>
void rk4_step(const Rhs& rhs, double sigma, double h, Vec& x, Vec& k1, Vec& k2, Vec& k3, Vec& k4,
              Vec& tmp) {
  const std::size_t n = x.size();
  rhs(sigma, x, k1);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * h * k1[i];
  rhs(sigma + 0.5 * h, tmp, k2);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * h * k2[i];
  rhs(sigma + 0.5 * h, tmp, k3);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + h * k3[i];
  rhs(sigma + h, tmp, k4);
  for (std::size_t i = 0; i < n; ++i) x[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

Vec sample_inputs(std::span<const InputSignal* const> u, double t) {
  Vec out;
  out.reserve(u.size());
  for (const InputSignal* s : u) out.push_back(eval(*s, t));
  return out;
}

// Runs RK4 for a system whose right-hand side is built from the input rates
// r_i = u_i(t(sigma)) dt/dsigma.
template <class Field>
Trajectory run_rk4(std::span<const InputSignal* const> u, Vec x, const Interval& iv, int steps,
                   const Field& field) {
  check_steps(steps);
  const TimeMap tm = TimeMap::for_signals(iv, u);
  const Interval range = tm.parameter_range();
  const double h = range.length() / steps;

  Trajectory traj;
  traj.scheme = "rk4";
  traj.steps = steps;
  traj.substituted = tm.substituted();
  traj.t.reserve(steps + 1);
  traj.states.reserve(steps + 1);

  Vec rates(u.size());
  auto rhs = [&](double sigma, const Vec& s, Vec& ds) {
    for (std::size_t i = 0; i < u.size(); ++i) rates[i] = tm.rate(*u[i], sigma);
    field(s, rates, ds);
  };
  Vec k1(x.size()), k2(x.size()), k3(x.size()), k4(x.size()), tmp(x.size());
  for (int k = 0; k <= steps; ++k) {
    const double sigma = k == steps ? range.hi : range.lo + k * h;
    const double t = tm.time(sigma);
    traj.t.push_back(t);
    traj.states.push_back(x);
    traj.inputs.push_back(sample_inputs(u, t));
    if (k < steps) rk4_step(rhs, sigma, h, x, k1, k2, k3, k4, tmp);
  }
  return traj;
}

}  // namespace

GnhiState::GnhiState(int m) : m_(m) {
  if (m < 2 || m > kMaxChannels) {
    throw ArgumentError("channel count m must be in [2, " + std::to_string(kMaxChannels) + "]");
  }
  x_.assign(m, 0.0);
  xx_.assign(m * (m - 1) / 2, 0.0);
}

int GnhiState::pair_index(int i, int j) const {
  if (!(0 <= i && i < j && j < m_)) throw ArgumentError("coupling index requires 0 <= i < j < m");
  // Lexicographic position of (i, j) among pairs with i < j.
  return i * m_ - i * (i + 1) / 2 + (j - i - 1);
}

std::vector<double> GnhiState::flatten() const {
  std::vector<double> v = x_;
  v.insert(v.end(), xx_.begin(), xx_.end());
  return v;
}

GnhiState GnhiState::unflatten(int m, const std::vector<double>& v) {
  GnhiState s(m);
  if (v.size() != s.dimension()) throw ArgumentError("state vector has the wrong length");
  for (int i = 0; i < m; ++i) s.x_[i] = v[i];
  for (std::size_t k = 0; k < s.xx_.size(); ++k) s.xx_[k] = v[m + k];
  return s;
}

void Trajectory::append(const Trajectory& next) {
  if (t.empty()) {
    *this = next;
    return;
  }
  for (std::size_t k = 1; k < next.t.size(); ++k) {
    t.push_back(next.t[k]);
    states.push_back(next.states[k]);
    inputs.push_back(next.inputs[k]);
  }
  steps += next.steps;
  substituted = substituted || next.substituted;
}

Trajectory integrate_nhi(const NhiInputs& u, const NhiState& x0, const Interval& iv, int steps) {
  const InputSignal* sig[] = {&u[0], &u[1]};
  Trajectory traj = run_rk4(sig, {x0.x1, x0.x2, x0.x3}, iv, steps,
                            [](const Vec& x, const Vec& r, Vec& dx) {
                              dx[0] = r[0];
                              dx[1] = r[1];
                              dx[2] = x[0] * r[1] - x[1] * r[0];
                            });
  traj.system = "nhi";
  traj.state_labels = {"x1", "x2", "x3"};
  traj.input_labels = {"u1", "u2"};
  return traj;
}

NhiState nhi_terminal(const Trajectory& traj) {
  const auto& x = traj.terminal();
  return {x.at(0), x.at(1), x.at(2)};
}

Trajectory integrate_gnhi(const std::vector<InputSignal>& u, const GnhiState& s0,
                          const Interval& iv, int steps) {
  const int m = s0.m();
  if (static_cast<int>(u.size()) != m) {
    throw ArgumentError("expected " + std::to_string(m) + " inputs, got " +
                        std::to_string(u.size()));
  }
  std::vector<const InputSignal*> sig;
  for (const auto& s : u) sig.push_back(&s);
  Trajectory traj = run_rk4(std::span<const InputSignal* const>(sig), s0.flatten(), iv, steps,
                            [m](const Vec& x, const Vec& r, Vec& dx) {
                              for (int i = 0; i < m; ++i) dx[i] = r[i];
                              std::size_t k = m;
                              for (int i = 0; i < m; ++i) {
                                for (int j = i + 1; j < m; ++j) dx[k++] = x[i] * r[j] - x[j] * r[i];
                              }
                            });
  traj.system = "gnhi";
  for (int i = 0; i < m; ++i) {
    traj.state_labels.push_back("x" + std::to_string(i + 1));
    traj.input_labels.push_back("u" + std::to_string(i + 1));
  }
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      traj.state_labels.push_back("x" + std::to_string(i + 1) + std::to_string(j + 1));
    }
  }
  return traj;
}

GnhiState gnhi_terminal(const Trajectory& traj, int m) {
  return GnhiState::unflatten(m, traj.terminal());
}

Trajectory integrate_so3(const So3Inputs& omega, const Rotation& g0, const Interval& iv,
                         int steps, So3Scheme scheme) {
  check_steps(steps);
  const InputSignal* sig[] = {&omega[0], &omega[1], &omega[2]};
  const TimeMap tm = TimeMap::for_signals(iv, sig);
  const Interval range = tm.parameter_range();
  const double h = range.length() / steps;

  Trajectory traj;
  traj.system = "so3";
  traj.scheme = scheme == So3Scheme::Magnus4 ? "magnus4" : "lie-midpoint";
  traj.steps = steps;
  traj.substituted = tm.substituted();
  traj.state_labels = {"g11", "g12", "g13", "g21", "g22", "g23", "g31", "g32", "g33"};
  traj.input_labels = {"w1", "w2", "w3"};

  Rotation g = g0;
  for (int k = 0; k <= steps; ++k) {
    const double sigma = k == steps ? range.hi : range.lo + k * h;
    const double t = tm.time(sigma);
    traj.t.push_back(t);
    std::vector<double> flat(9);
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) flat[3 * r + c] = g(r, c);
    }
    traj.states.push_back(std::move(flat));
    traj.inputs.push_back(sample_inputs(sig, t));
    if (k == steps) break;
    auto rate = [&](double s) {
      return so3::Vec3{tm.rate(omega[0], s), tm.rate(omega[1], s), tm.rate(omega[2], s)};
    };
    if (scheme == So3Scheme::Magnus4) {
      // [hat a, hat b] = hat(a x b)
      const double off = h * std::sqrt(3.0) / 6.0;
      const so3::Vec3 w1 = rate(sigma + 0.5 * h - off), w2 = rate(sigma + 0.5 * h + off);
      const so3::Vec3 step = 0.5 * h * (w1 + w2) + (std::sqrt(3.0) / 12.0) * h * h * w2.cross(w1);
      g = so3::exp(step) * g;
    } else {
      g = so3::exp(h * rate(sigma + 0.5 * h)) * g;
    }
    if ((g.transpose() * g - Rotation::Identity()).norm() > 1e-12) g = so3::project(g);
  }
  return traj;
}

Rotation so3_sample(const Trajectory& traj, std::size_t k) {
  const auto& s = traj.states.at(k);
  Rotation g;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) g(r, c) = s.at(3 * r + c);
  }
  return g;
}

Rotation so3_terminal(const Trajectory& traj) { return so3_sample(traj, traj.states.size() - 1); }

double coupling_displacement(const InputSignal& u1, const InputSignal& u2, const Interval& iv) {
  const InputSignal* sig[] = {&u1, &u2};
  const TimeMap tm = TimeMap::for_signals(iv, sig);
  const Interval range = tm.parameter_range();
  QuadratureOptions inner;
  inner.abs_tol = 1e-14;
  inner.rel_tol = 1e-13;
  auto running = [&](const InputSignal& u, double sigma) {
    if (sigma <= range.lo) return 0.0;
    return integrate([&](double s) { return tm.rate(u, s); }, range.lo, sigma, inner);
  };
  QuadratureOptions outer;
  outer.abs_tol = 1e-13;
  outer.rel_tol = 1e-12;
  return integrate(
      [&](double sigma) {
        return running(u1, sigma) * tm.rate(u2, sigma) - running(u2, sigma) * tm.rate(u1, sigma);
      },
      range.lo, range.hi, outer);
}

}  // namespace orthosteer
