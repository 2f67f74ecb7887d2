#pragma once

// JSON and CSV formats. Floats are written as shortest round-trip decimals,
// keys in a fixed order and lines end in '\n', so identical inputs give
// byte-identical files.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "orthosteer/fuel_l1.hpp"
#include "orthosteer/so3_control.hpp"
#include "orthosteer/steering.hpp"

namespace orthosteer::io {

using Json = nlohmann::ordered_json;

std::string format_double(double v);

Json to_json(const Term& term);
Term term_from_json(const Json& j);
Json to_json(const InputSignal& u);
InputSignal signal_from_json(const Json& j);

Json to_json(const SteeringPlan& plan);
SteeringPlan steering_plan_from_json(const Json& j);

Json to_json(const Rotation& g);
Rotation rotation_from_json(const Json& j);
Json to_json(const AttitudePlan& plan);
AttitudePlan attitude_plan_from_json(const Json& j);

Json to_json(const FuelReport& r);
Json to_json(const LpFuelResult& r);
/// label,odd_index,even_index,c1,c2,c,b1,b2,min_j,oracle_min_j
std::string fuel_comparison_csv(const std::vector<FuelReport>& reports);

/// Header "t,<state labels>,<input labels>"; for the generalized integrator
/// the coupling columns x_ij come last.
std::string trajectory_csv(const Trajectory& traj);

/// Data for plots: (x1, x3), (x1, x2) and (x1, x2, x3) columns of a
/// nonholonomic-integrator trajectory.
struct PlotData {
  std::string x3_vs_x1;
  std::string x2_vs_x1;
  std::string trace3d;
};
PlotData plot_data(const Trajectory& traj);

/// Text dump with a trailing newline.
std::string dump(const Json& j);

enum class SystemKind { nhi, gnhi, so3 };
enum class CostKind { none, weighted_l2, l1 };
enum class AttitudeMode { constant, weighted_rate, underactuated };

struct ScenarioConfig {
  SystemKind system = SystemKind::nhi;
  std::vector<double> start;
  std::vector<double> target;
  int channels = 2;
  std::string family = "legendre";
  std::optional<std::pair<int, int>> pair;
  std::optional<JacobiParams> jacobi;
  CostKind cost = CostKind::none;
  Interval interval = kCanonical;
  int steps = kDefaultSteps;
  std::optional<std::string> plan_path;
  std::optional<std::string> trajectory_path;
  std::uint64_t seed = 0;
  // Attitude scenarios.
  AttitudeMode mode = AttitudeMode::constant;
  double duration = 1.0;
  std::vector<double> q_coeffs{1.0};
  bool tie_break = false;
  // Explicit per-channel inputs, simulated directly instead of planning.
  std::optional<std::vector<InputSignal>> inputs;
};

ScenarioConfig scenario_from_json(const Json& j);
Json to_json(const ScenarioConfig& c);

/// Rotation from 9 row-major entries, or from a 3-entry rotation vector.
Rotation rotation_from_values(const std::vector<double>& v);

}  // namespace orthosteer::io
