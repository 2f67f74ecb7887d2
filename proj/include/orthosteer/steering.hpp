#pragma once

// Steering plans for the nonholonomic integrator and its m-input
// generalization: a constant-input phase for the base coordinates, then
// phases driven by scaled odd/even basis pairs that move only the coupling
// coordinates.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orthosteer/dynamics.hpp"

namespace orthosteer {

/// One odd and one even basis element that both integrate to zero against
/// constants (after weighting, when `weighted`).
struct PairSpec {
  BasisElement odd;
  BasisElement even;
  bool weighted = false;

  InputSignal odd_signal(double scale = 1.0) const {
    return InputSignal::basis(odd, scale, weighted);
  }
  InputSignal even_signal(double scale = 1.0) const {
    return InputSignal::basis(even, scale, weighted);
  }
};

/// Family names accepted by make_pair: legendre, chebyshev_first,
/// chebyshev_second, jacobi, trig.
std::vector<std::string> steering_families();

/// Builds the (odd, even) pair of a family on iv, which must be [-1, 1] or
/// [0, 1]. Default indices are (1, 2), or (1, 1) for trig (sin, cos).
/// Chebyshev and Jacobi pairs always carry their family weight.
PairSpec make_pair(const std::string& family, const Interval& iv,
                   std::optional<std::pair<int, int>> indices = std::nullopt,
                   std::optional<JacobiParams> jacobi_params = std::nullopt);

struct PlanPhase {
  Interval interval;
  std::vector<InputSignal> inputs;
  std::vector<double> predicted_endpoint;
  std::vector<std::string> moves;
  std::vector<std::string> fixes;
};

struct SteeringPlan {
  std::string system;  // "nhi" or "gnhi"
  std::vector<std::string> labels;
  std::vector<double> start;
  std::vector<double> target;
  std::vector<PlanPhase> phases;
  std::vector<double> predicted_endpoint;
  std::optional<double> cost;
  std::optional<std::string> closed_form;

  int channels() const;
};

/// (s1, s2) with s1 s2 D = target, D = coupling_displacement(u1, u2, iv):
/// (s, s) when target / D > 0, (s, -s) otherwise, s = sqrt(|target / D|).
std::pair<double, double> scale_pair(const InputSignal& u1, const InputSignal& u2, double target,
                                     const Interval& iv);

SteeringPlan plan_nhi(const NhiState& x0, const NhiState& xf, const PairSpec& pair,
                      const Interval& iv);

SteeringPlan plan_gnhi(const GnhiState& s0, const GnhiState& sf, const PairSpec& pair,
                       const Interval& iv);

/// Integrates every phase in order. Phase k runs on its own interval; sample
/// times are offset so the concatenated grid is increasing.
Trajectory simulate_plan(const SteeringPlan& plan, int steps_per_phase = kDefaultSteps);

/// Max absolute coordinate difference between two states.
double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace orthosteer
