#pragma once

// Fixed-step simulation of the nonholonomic integrator
//   x1' = u1, x2' = u2, x3' = x1 u2 - x2 u1,
// its m-input generalization x_ij' = x_i u_j - x_j u_i (i < j), and the
// attitude kinematics g' = hat(omega) g.

#include <array>
#include <string>
#include <vector>

#include "orthosteer/signal.hpp"
#include "orthosteer/so3.hpp"

namespace orthosteer {

inline constexpr int kDefaultSteps = 2000;
inline constexpr int kMinSteps = 100;
inline constexpr int kMaxChannels = 8;

struct NhiState {
  double x1 = 0.0;
  double x2 = 0.0;
  double x3 = 0.0;
  friend bool operator==(const NhiState&, const NhiState&) = default;
};

class GnhiState {
 public:
  explicit GnhiState(int m = 2);

  int m() const { return m_; }
  double& x(int i) { return x_.at(i); }
  double x(int i) const { return x_.at(i); }
  /// Coupling coordinate x_ij, 0 <= i < j < m.
  double& xx(int i, int j) { return xx_.at(pair_index(i, j)); }
  double xx(int i, int j) const { return xx_.at(pair_index(i, j)); }

  /// x_0..x_{m-1} followed by x_ij in lexicographic (i, j) order.
  std::vector<double> flatten() const;
  static GnhiState unflatten(int m, const std::vector<double>& v);
  std::size_t dimension() const { return x_.size() + xx_.size(); }
  int pair_index(int i, int j) const;

  friend bool operator==(const GnhiState&, const GnhiState&) = default;

 private:
  int m_;
  std::vector<double> x_;
  std::vector<double> xx_;
};

using Rotation = so3::Mat3;

using NhiInputs = std::array<InputSignal, 2>;
using So3Inputs = std::array<InputSignal, 3>;

struct Trajectory {
  std::string system;
  std::string scheme;
  int steps = 0;
  /// True when stepping ran in s with t = mid - half cos(s).
  bool substituted = false;
  std::vector<std::string> state_labels;
  std::vector<std::string> input_labels;
  std::vector<double> t;
  std::vector<std::vector<double>> states;
  /// Input values at each sample; +-inf where a weighted term is singular.
  std::vector<std::vector<double>> inputs;

  const std::vector<double>& terminal() const { return states.back(); }
  /// Appends another trajectory that starts where this one ends, dropping
  /// its first sample.
  void append(const Trajectory& next);
};

Trajectory integrate_nhi(const NhiInputs& u, const NhiState& x0, const Interval& iv,
                         int steps = kDefaultSteps);
NhiState nhi_terminal(const Trajectory& traj);

Trajectory integrate_gnhi(const std::vector<InputSignal>& u, const GnhiState& s0,
                          const Interval& iv, int steps = kDefaultSteps);
GnhiState gnhi_terminal(const Trajectory& traj, int m);

enum class So3Scheme {
  /// Two-point Gauss Magnus step, fourth order.
  Magnus4,
  /// g_{k+1} = exp(h hat(omega(t_k + h/2))) g_k, second order.
  LieMidpoint,
};

Trajectory integrate_so3(const So3Inputs& omega, const Rotation& g0, const Interval& iv,
                         int steps = kDefaultSteps, So3Scheme scheme = So3Scheme::Magnus4);
Rotation so3_sample(const Trajectory& traj, std::size_t k);
Rotation so3_terminal(const Trajectory& traj);

/// integral over iv of (x1 u2 - x2 u1) with x_i(t) the running integral of
/// u_i from iv.lo, by nested adaptive quadrature.
double coupling_displacement(const InputSignal& u1, const InputSignal& u2, const Interval& iv);

}  // namespace orthosteer
