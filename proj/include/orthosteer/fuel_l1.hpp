#pragma once

// Fuel (L1) cost of steering x3 with a fixed basis pair: with inputs
// b1 u1, b2 u2 the transfer fixes b1 b2 = c, and
//   J = |b1| c1 + |b2| c2,  c_i = int |u_i| dt,
// is minimized by |b1| c1 = |b2| c2, giving J = 2 sqrt(|c| c1 c2).

#include <optional>
#include <string>
#include <vector>

#include "orthosteer/steering.hpp"

namespace orthosteer {

struct FuelConstants {
  double c1 = 0.0;
  double c2 = 0.0;
  /// Required amplitude product b1 b2.
  double c = 0.0;
  /// Coupling displacement of the unit-amplitude pair.
  double displacement = 0.0;
};

struct FuelReport {
  std::string label;
  int odd_index = 0;
  int even_index = 0;
  double target = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double c = 0.0;
  double b1 = 0.0;
  double b2 = 0.0;
  double min_j = 0.0;
  double oracle_min_j = 0.0;
  /// Terminal state of (b1 u1, b2 u2) from the origin, when simulated.
  std::optional<NhiState> simulated;
};

/// c1 = int |u1|, c2 = int |u2|, c = a / coupling_displacement(u1, u2).
FuelConstants fuel_constants(const InputSignal& u1, const InputSignal& u2, double a,
                             const Interval& iv);

/// Closed-form optimum, cross-checked by a 10^4-point logarithmic grid over
/// b1 (with b2 = c / b1) refined by golden-section search.
FuelReport fuel_min(const FuelConstants& k);

/// Grid-plus-refinement minimum of |b1| c1 + |c| c2 / |b1| over b1 > 0.
double fuel_oracle(const FuelConstants& k);

struct LpFuelResult {
  double p = 1.0;
  /// C_i = int |u_i|^p dt.
  double cp1 = 0.0;
  double cp2 = 0.0;
  double c = 0.0;
  double b1 = 0.0;
  double b2 = 0.0;
  /// min over b1 b2 = c of |b1|^p C1 + |b2|^p C2, found numerically.
  double min_j = 0.0;
};

/// L^p variant of the fuel problem (p >= 1), minimized numerically in b1.
LpFuelResult fuel_min_lp(const InputSignal& u1, const InputSignal& u2, double a,
                         const Interval& iv, double p);

struct FuelCandidate {
  std::string label;
  PairSpec pair;
};

/// One report per candidate, sorted ascending by min_j (stable). Each
/// report's amplitudes are simulated from the origin at `steps` and the
/// transfer is checked to 1e-6; a failed check throws PlannerError.
std::vector<FuelReport> compare_families(const std::vector<FuelCandidate>& candidates, double a,
                                         const Interval& iv, int steps = 4000);

}  // namespace orthosteer
