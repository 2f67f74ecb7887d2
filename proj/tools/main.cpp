// orthosteer command-line interface: plan, simulate, verify, fuel, paper-repro.
// Exit codes: 0 success, 1 library or verification failure, 2 usage error.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "orthosteer/fuel_l1.hpp"
#include "orthosteer/optimal_energy.hpp"
#include "orthosteer/repro.hpp"
#include "orthosteer/serialize.hpp"
#include "orthosteer/so3_control.hpp"
#include "orthosteer/steering.hpp"

namespace os = orthosteer;
namespace io = orthosteer::io;

namespace {

constexpr double kVerifyTol = 1e-6;
constexpr const char* kOutDirEnv = "ORTHOSTEER_OUT_DIR";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::filesystem::path resolve(const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_absolute()) return p;
  if (const char* dir = std::getenv(kOutDirEnv); dir && *dir) return std::filesystem::path(dir) / p;
  return p;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  const auto p = resolve(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream f(p, std::ios::binary);
  if (!f) throw os::ArgumentError("cannot write " + p.string());
  f << text;
}

io::Json read_json(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw os::ArgumentError("cannot read " + path);
  try {
    return io::Json::parse(f);
  } catch (const io::Json::exception& e) {
    throw os::ArgumentError(path + ": " + e.what());
  }
}

os::Interval parse_interval(const std::vector<double>& v) {
  if (v.size() != 2 || !(v[1] > v[0])) throw UsageError("--interval needs lo,hi with lo < hi");
  return {v[0], v[1]};
}

os::NhiState nhi_state(const std::vector<double>& v) {
  if (v.empty()) return {};
  if (v.size() != 3) throw UsageError("nonholonomic-integrator states have 3 coordinates");
  return {v[0], v[1], v[2]};
}

os::GnhiState gnhi_state(int m, const std::vector<double>& v) {
  if (v.empty()) return os::GnhiState(m);
  return os::GnhiState::unflatten(m, v);
}

os::Rotation rotation(const std::vector<double>& v) {
  return v.empty() ? os::Rotation::Identity() : io::rotation_from_values(v);
}

// Replaces the equal-magnitude split of the x3 phase by the fuel-optimal one.
void apply_fuel_split(os::SteeringPlan& plan, const os::PairSpec& pair, const os::Interval& iv) {
  double cost = 0.0;
  std::vector<double> before = plan.start;
  for (os::PlanPhase& ph : plan.phases) {
    if (ph.moves == std::vector<std::string>{"x3"}) {
      const double a = ph.predicted_endpoint[2] - before[2];
      const os::FuelReport r =
          os::fuel_min(os::fuel_constants(pair.odd_signal(), pair.even_signal(), a, iv));
      ph.inputs = {pair.odd_signal(r.b1), pair.even_signal(r.b2)};
      cost += r.min_j;
    } else {
      for (const auto& u : ph.inputs) cost += os::l1_norm(u, ph.interval);
    }
    before = ph.predicted_endpoint;
  }
  plan.cost = cost;
}

io::Json make_plan(const io::ScenarioConfig& c) {
  switch (c.system) {
    case io::SystemKind::nhi: {
      const os::NhiState x0 = nhi_state(c.start), xf = nhi_state(c.target);
      if (c.cost == io::CostKind::weighted_l2) {
        if (!(c.interval == os::kCanonical)) {
          throw os::ArgumentError("the weighted_l2 closed form is defined on [-1, 1]");
        }
        return io::to_json(os::cheb_optimal_plan(x0, xf));
      }
      const os::PairSpec pair = os::make_pair(c.family, c.interval, c.pair, c.jacobi);
      os::SteeringPlan plan = os::plan_nhi(x0, xf, pair, c.interval);
      if (c.cost == io::CostKind::l1) apply_fuel_split(plan, pair, c.interval);
      return io::to_json(plan);
    }
    case io::SystemKind::gnhi: {
      if (c.cost != io::CostKind::none) throw os::ArgumentError("gnhi plans support cost none only");
      const os::PairSpec pair = os::make_pair(c.family, c.interval, c.pair, c.jacobi);
      return io::to_json(os::plan_gnhi(gnhi_state(c.channels, c.start),
                                       gnhi_state(c.channels, c.target), pair, c.interval));
    }
    case io::SystemKind::so3: {
      const os::Rotation g0 = rotation(c.start), g1 = rotation(c.target);
      switch (c.mode) {
        case io::AttitudeMode::constant:
          return io::to_json(os::constant_omega_plan(g0, g1, c.duration, c.tie_break));
        case io::AttitudeMode::weighted_rate:
          return io::to_json(os::weighted_rate_plan(g0, g1, c.duration, c.q_coeffs, c.tie_break));
        case io::AttitudeMode::underactuated:
          return io::to_json(os::underactuated_plan(g0, g1, c.duration, c.steps));
      }
    }
  }
  throw os::ArgumentError("unsupported scenario");
}

os::Trajectory simulate_plan_json(const io::Json& j, int steps) {
  if (j.value("system", std::string()) == "so3") {
    const os::AttitudePlan plan = io::attitude_plan_from_json(j);
    return os::integrate_so3(plan.omega, plan.g0, plan.interval(), steps);
  }
  return os::simulate_plan(io::steering_plan_from_json(j), steps);
}

os::Trajectory simulate_config(const io::ScenarioConfig& c, int steps) {
  if (!c.inputs) return simulate_plan_json(make_plan(c), steps);
  const auto& u = *c.inputs;
  switch (c.system) {
    case io::SystemKind::nhi:
      if (u.size() != 2) throw os::ArgumentError("nhi scenarios need 2 inputs");
      return os::integrate_nhi({u[0], u[1]}, nhi_state(c.start), c.interval, steps);
    case io::SystemKind::gnhi:
      return os::integrate_gnhi(u, gnhi_state(c.channels, c.start), c.interval, steps);
    case io::SystemKind::so3:
      if (u.size() != 3) throw os::ArgumentError("so3 scenarios need 3 inputs");
      return os::integrate_so3({u[0], u[1], u[2]}, rotation(c.start), c.interval, steps);
  }
  throw os::ArgumentError("unsupported scenario");
}

std::vector<os::FuelCandidate> fuel_candidates(const std::vector<std::string>& specs,
                                               const os::Interval& iv) {
  std::vector<os::FuelCandidate> out;
  for (const std::string& spec : specs) {
    // family[:odd:even]
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    std::optional<std::pair<int, int>> idx;
    if (parts.size() == 3) {
      idx = std::pair{std::stoi(parts[1]), std::stoi(parts[2])};
    } else if (parts.size() != 1) {
      throw UsageError("family spec must be name or name:i:j, got '" + spec + "'");
    }
    out.push_back({spec, os::make_pair(parts[0], iv, idx)});
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steering of nonholonomic systems with orthogonal functions"};
  app.require_subcommand(1);

  // plan
  auto* plan_cmd = app.add_subcommand("plan", "Emit a steering or attitude plan as JSON");
  std::string system;
  std::string config_path, out_path;
  std::vector<double> from, to, interval{-1.0, 1.0}, q{1.0};
  std::vector<int> pair;
  std::string family = "legendre", cost = "none", mode = "constant";
  double alpha = 0.0, beta = 0.0, duration = 1.0;
  int channels = 3, plan_steps = os::kAttitudeSteps;
  bool tie_break = false;
  plan_cmd->add_option("system", system, "nhi, gnhi or so3")
      ->check(CLI::IsMember({"nhi", "gnhi", "so3"}));
  plan_cmd->add_option("--config", config_path, "Scenario JSON (replaces the other flags)");
  plan_cmd->add_option("--from", from, "Start state (so3: 9 matrix entries or a rotation vector)")
      ->delimiter(',');
  plan_cmd->add_option("--to", to, "Target state")->delimiter(',');
  plan_cmd->add_option("--family", family, "legendre, chebyshev_first, chebyshev_second, jacobi, trig");
  plan_cmd->add_option("--pair", pair, "Pair indices i,j")->delimiter(',')->expected(2);
  plan_cmd->add_option("--alpha", alpha, "Jacobi alpha");
  plan_cmd->add_option("--beta", beta, "Jacobi beta");
  plan_cmd->add_option("--interval", interval, "Interval lo,hi")->delimiter(',')->expected(2);
  plan_cmd->add_option("--cost", cost, "none, weighted_l2 or l1")
      ->check(CLI::IsMember({"none", "weighted_l2", "l1"}));
  plan_cmd->add_option("--m", channels, "Channel count for gnhi")->check(CLI::Range(2, os::kMaxChannels));
  plan_cmd->add_option("--mode", mode, "so3: constant, weighted_rate or underactuated")
      ->check(CLI::IsMember({"constant", "weighted_rate", "underactuated"}));
  plan_cmd->add_option("--duration", duration, "so3 maneuver duration T");
  plan_cmd->add_option("--q", q, "so3 weight polynomial coefficients q0,q1,...")->delimiter(',');
  plan_cmd->add_flag("--tie-break", tie_break, "Resolve the axis sign of half-turn rotations");
  plan_cmd->add_option("--steps", plan_steps, "Shooting simulation steps")->check(CLI::Range(os::kMinSteps, 10000000));
  plan_cmd->add_option("--out", out_path, "Output file (default: stdout)");

  // simulate
  auto* sim_cmd = app.add_subcommand("simulate", "Simulate a plan or scenario, emit trajectory CSV");
  std::string sim_plan, sim_config, sim_out, plot_prefix;
  int sim_steps = os::kDefaultSteps;
  auto* sim_src = sim_cmd->add_option("--plan", sim_plan, "Plan JSON");
  sim_cmd->add_option("--config", sim_config, "Scenario JSON")->excludes(sim_src);
  sim_cmd->add_option("--steps", sim_steps, "Steps per phase")->check(CLI::Range(os::kMinSteps, 10000000));
  sim_cmd->add_option("--out", sim_out, "Output CSV (default: stdout)");
  sim_cmd->add_option("--plot-prefix", plot_prefix, "Also write <prefix>_x3_vs_x1.csv, _x2_vs_x1.csv, _trace3d.csv");

  // verify
  auto* ver_cmd = app.add_subcommand("verify", "Re-simulate a plan and check its endpoint");
  std::string ver_plan;
  int ver_steps = 4000;
  ver_cmd->add_option("--plan", ver_plan, "Plan JSON")->required();
  ver_cmd->add_option("--steps", ver_steps, "Steps per phase")->check(CLI::Range(os::kMinSteps, 10000000));

  // fuel
  auto* fuel_cmd = app.add_subcommand("fuel", "Fuel (L1) comparison of basis pairs");
  std::vector<std::string> fuel_families{"legendre", "trig"};
  double fuel_target = 1.0;
  std::vector<double> fuel_interval{-1.0, 1.0};
  std::string fuel_out, fuel_csv;
  double lp = 0.0;
  fuel_cmd->add_option("--families,--compare", fuel_families, "family or family:i:j, comma separated")->delimiter(',');
  fuel_cmd->add_option("--target", fuel_target, "x3 displacement a");
  fuel_cmd->add_option("--interval", fuel_interval, "Interval lo,hi")->delimiter(',')->expected(2);
  fuel_cmd->add_option("--p", lp, "Also solve the L^p variant with this exponent (>= 1)");
  fuel_cmd->add_option("--out", fuel_out, "Report JSON (default: stdout)");
  fuel_cmd->add_option("--csv", fuel_csv, "Comparison CSV");

  auto* repro_cmd = app.add_subcommand("paper-repro", "Recompute the published reference values");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (plan_cmd->parsed()) {
      io::ScenarioConfig cfg;
      if (!config_path.empty()) {
        cfg = io::scenario_from_json(read_json(config_path));
      } else {
        if (system.empty()) throw UsageError("plan needs a system (nhi, gnhi, so3) or --config");
        io::Json j;
        j["system"] = system;
        j["start"] = from;
        j["target"] = to;
        j["channels"] = system == "gnhi" ? channels : 2;
        j["family"] = family;
        if (!pair.empty()) j["pair"] = pair;
        if (family == "jacobi") {
          j["alpha"] = alpha;
          j["beta"] = beta;
        }
        j["cost"] = cost;
        j["interval"] = interval;
        j["steps"] = plan_steps;
        j["mode"] = mode;
        j["duration"] = duration;
        j["q"] = q;
        j["tie_break"] = tie_break;
        cfg = io::scenario_from_json(j);
      }
      emit(io::dump(make_plan(cfg)), out_path);
      return 0;
    }
    if (sim_cmd->parsed()) {
      os::Trajectory traj;
      if (!sim_plan.empty()) {
        traj = simulate_plan_json(read_json(sim_plan), sim_steps);
      } else if (!sim_config.empty()) {
        const io::ScenarioConfig cfg = io::scenario_from_json(read_json(sim_config));
        traj = simulate_config(cfg, sim_cmd->count("--steps") ? sim_steps : cfg.steps);
        if (sim_out.empty() && cfg.trajectory_path) sim_out = *cfg.trajectory_path;
      } else {
        throw UsageError("simulate needs --plan or --config");
      }
      emit(io::trajectory_csv(traj), sim_out);
      if (!plot_prefix.empty()) {
        const io::PlotData p = io::plot_data(traj);
        emit(p.x3_vs_x1, plot_prefix + "_x3_vs_x1.csv");
        emit(p.x2_vs_x1, plot_prefix + "_x2_vs_x1.csv");
        emit(p.trace3d, plot_prefix + "_trace3d.csv");
      }
      return 0;
    }
    if (ver_cmd->parsed()) {
      const io::Json j = read_json(ver_plan);
      double err = 0.0;
      if (j.value("system", std::string()) == "so3") {
        const os::AttitudePlan plan = io::attitude_plan_from_json(j);
        const os::Trajectory traj = os::integrate_so3(plan.omega, plan.g0, plan.interval(), ver_steps);
        err = os::frobenius_error(os::so3_terminal(traj), plan.g1);
        std::cout << "attitude error (Frobenius): " << io::format_double(err) << "\n";
      } else {
        const os::SteeringPlan plan = io::steering_plan_from_json(j);
        const std::vector<double> end = os::simulate_plan(plan, ver_steps).terminal();
        for (std::size_t i = 0; i < end.size(); ++i) {
          const double e = std::fabs(end[i] - plan.target[i]);
          std::cout << plan.labels[i] << " error: " << io::format_double(e) << "\n";
        }
        err = os::max_abs_diff(end, plan.target);
        std::cout << "endpoint error: " << io::format_double(err) << "\n";
      }
      if (!(err < kVerifyTol)) {
        std::cerr << "verification failed: error " << io::format_double(err) << " >= 1e-6\n";
        return 1;
      }
      return 0;
    }
    if (fuel_cmd->parsed()) {
      const os::Interval iv = parse_interval(fuel_interval);
      const auto candidates = fuel_candidates(fuel_families, iv);
      const auto reports = os::compare_families(candidates, fuel_target, iv);
      io::Json j;
      j["target"] = fuel_target;
      j["interval"] = fuel_interval;
      io::Json arr = io::Json::array();
      for (const auto& r : reports) arr.push_back(io::to_json(r));
      j["reports"] = arr;
      if (lp != 0.0) {
        io::Json lps = io::Json::array();
        for (const auto& c : candidates) {
          io::Json e = io::to_json(
              os::fuel_min_lp(c.pair.odd_signal(), c.pair.even_signal(), fuel_target, iv, lp));
          e["label"] = c.label;
          lps.push_back(e);
        }
        j["lp"] = lps;
      }
      emit(io::dump(j), fuel_out);
      if (!fuel_csv.empty()) emit(io::fuel_comparison_csv(reports), fuel_csv);
      return 0;
    }
    if (repro_cmd->parsed()) {
      const auto rows = os::paper_repro();
      std::cout << os::format_repro_table(rows);
      for (const auto& r : rows) {
        if (r.status() == "fail") return 1;
      }
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const os::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
