#include "orthosteer/serialize.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace orthosteer::io {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

Json interval_json(const Interval& iv) { return Json::array({iv.lo, iv.hi}); }

Interval interval_from(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw ArgumentError("interval must be [lo, hi]");
  const Interval iv{j[0].get<double>(), j[1].get<double>()};
  if (!(iv.hi > iv.lo)) throw ArgumentError("interval must satisfy lo < hi");
  return iv;
}

std::vector<std::string> strings(const Json& j) {
  return j.is_null() ? std::vector<std::string>{} : j.get<std::vector<std::string>>();
}

std::string csv_row(std::initializer_list<const std::vector<double>*> parts, double t) {
  std::string line = format_double(t);
  for (const auto* p : parts) {
    for (double v : *p) {
      line += ',';
      line += format_double(v);
    }
  }
  line += '\n';
  return line;
}

const Json& require(const Json& j, const char* key) {
  if (!j.contains(key)) throw ArgumentError(std::string("missing field '") + key + "'");
  return j.at(key);
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) v = 0.0;  // drop the sign of negative zero
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json to_json(const Term& term) {
  return std::visit(
      Overloaded{
          [](const BasisTerm& bt) {
            Json j;
            j["family"] = std::string(to_string(bt.element.family()));
            j["index"] = bt.element.index();
            j["scale"] = bt.scale;
            j["weighted"] = bt.weighted;
            j["domain"] = std::string(to_string(bt.element.domain()));
            if (bt.element.jacobi()) {
              j["alpha"] = bt.element.jacobi()->alpha;
              j["beta"] = bt.element.jacobi()->beta;
            }
            return j;
          },
          [](const ConstantTerm& c) {
            Json j;
            j["family"] = "constant";
            j["scale"] = c.value;
            return j;
          },
          [](const SinusoidTerm& s) {
            Json j;
            j["family"] = "sinusoid";
            j["scale"] = s.amplitude;
            j["frequency"] = s.frequency;
            j["phase"] = s.phase;
            return j;
          },
          [](const ReciprocalTerm& r) {
            Json j;
            j["family"] = "reciprocal";
            j["scale"] = r.scale;
            j["coeffs"] = r.coeffs;
            return j;
          },
      },
      term);
}

Term term_from_json(const Json& j) {
  const std::string fam = require(j, "family").get<std::string>();
  const double scale = require(j, "scale").get<double>();
  if (fam == "constant") return ConstantTerm{scale};
  if (fam == "sinusoid") {
    return SinusoidTerm{scale, require(j, "frequency").get<double>(), j.value("phase", 0.0)};
  }
  if (fam == "reciprocal") {
    return ReciprocalTerm{scale, require(j, "coeffs").get<std::vector<double>>()};
  }
  const Family f = family_from_string(fam);
  const Domain d = domain_from_string(j.value("domain", std::string("canonical")));
  std::optional<JacobiParams> jp;
  if (f == Family::jacobi) jp = JacobiParams{require(j, "alpha").get<double>(), require(j, "beta").get<double>()};
  return BasisTerm{BasisElement(f, require(j, "index").get<int>(), d, jp), scale,
                   j.value("weighted", false)};
}

Json to_json(const InputSignal& u) {
  Json arr = Json::array();
  for (const Term& t : u.terms()) arr.push_back(to_json(t));
  return arr;
}

InputSignal signal_from_json(const Json& j) {
  if (!j.is_array()) throw ArgumentError("an input signal is an array of terms");
  std::vector<Term> terms;
  for (const Json& t : j) terms.push_back(term_from_json(t));
  return InputSignal(std::move(terms));
}

Json to_json(const SteeringPlan& plan) {
  Json j;
  j["system"] = plan.system;
  j["labels"] = plan.labels;
  j["start"] = plan.start;
  j["target"] = plan.target;
  Json phases = Json::array();
  for (const PlanPhase& ph : plan.phases) {
    Json p;
    p["interval"] = interval_json(ph.interval);
    Json inputs = Json::array();
    for (const InputSignal& u : ph.inputs) inputs.push_back(to_json(u));
    p["inputs"] = inputs;
    p["moves"] = ph.moves;
    p["fixes"] = ph.fixes;
    p["predicted_endpoint"] = ph.predicted_endpoint;
    phases.push_back(p);
  }
  j["phases"] = phases;
  j["predicted_endpoint"] = plan.predicted_endpoint;
  j["cost"] = plan.cost ? Json(*plan.cost) : Json(nullptr);
  if (plan.closed_form) j["closed_form"] = *plan.closed_form;
  return j;
}

SteeringPlan steering_plan_from_json(const Json& j) {
  SteeringPlan plan;
  plan.system = require(j, "system").get<std::string>();
  if (plan.system != "nhi" && plan.system != "gnhi") {
    throw ArgumentError("not a steering plan (system '" + plan.system + "')");
  }
  plan.labels = strings(require(j, "labels"));
  plan.start = require(j, "start").get<std::vector<double>>();
  plan.target = j.value("target", plan.start);
  for (const Json& p : require(j, "phases")) {
    PlanPhase ph;
    ph.interval = interval_from(require(p, "interval"));
    for (const Json& u : require(p, "inputs")) ph.inputs.push_back(signal_from_json(u));
    ph.moves = strings(p.value("moves", Json::array()));
    ph.fixes = strings(p.value("fixes", Json::array()));
    ph.predicted_endpoint = p.value("predicted_endpoint", std::vector<double>{});
    if (ph.inputs.size() != static_cast<std::size_t>(plan.channels())) {
      throw ArgumentError("phase input count does not match the system");
    }
    plan.phases.push_back(std::move(ph));
  }
  plan.predicted_endpoint = require(j, "predicted_endpoint").get<std::vector<double>>();
  if (j.contains("cost") && !j["cost"].is_null()) plan.cost = j["cost"].get<double>();
  if (j.contains("closed_form")) plan.closed_form = j["closed_form"].get<std::string>();
  if (plan.start.size() != plan.labels.size() || plan.predicted_endpoint.size() != plan.labels.size()) {
    throw ArgumentError("state vectors do not match the labels");
  }
  return plan;
}

Json to_json(const Rotation& g) {
  Json rows = Json::array();
  for (int r = 0; r < 3; ++r) rows.push_back(Json::array({g(r, 0), g(r, 1), g(r, 2)}));
  return rows;
}

Rotation rotation_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 3) throw ArgumentError("rotation must be a 3x3 array");
  std::vector<double> v;
  for (const Json& row : j) {
    if (!row.is_array() || row.size() != 3) throw ArgumentError("rotation must be a 3x3 array");
    for (const Json& x : row) v.push_back(x.get<double>());
  }
  return rotation_from_values(v);
}

Json to_json(const AttitudePlan& plan) {
  Json j;
  j["system"] = "so3";
  j["kind"] = plan.kind;
  j["convention"] = kAttitudeConvention;
  j["boundary_conditions"] = "attitude only (no angular-rate constraints)";
  j["duration"] = plan.duration;
  j["g0"] = to_json(plan.g0);
  j["g1"] = to_json(plan.g1);
  Json omega = Json::array();
  for (const InputSignal& u : plan.omega) omega.push_back(to_json(u));
  j["omega"] = omega;
  Json params;
  for (const auto& [k, v] : plan.parameters) params[k] = v;
  j["parameters"] = params;
  j["cost"] = plan.cost;
  return j;
}

AttitudePlan attitude_plan_from_json(const Json& j) {
  if (require(j, "system").get<std::string>() != "so3") throw ArgumentError("not an attitude plan");
  AttitudePlan plan;
  plan.kind = require(j, "kind").get<std::string>();
  plan.duration = require(j, "duration").get<double>();
  if (!(plan.duration > 0.0)) throw ArgumentError("duration must be positive");
  plan.g0 = rotation_from_json(require(j, "g0"));
  plan.g1 = rotation_from_json(require(j, "g1"));
  const Json& omega = require(j, "omega");
  if (!omega.is_array() || omega.size() != 3) throw ArgumentError("omega needs three channels");
  for (int i = 0; i < 3; ++i) plan.omega[i] = signal_from_json(omega[i]);
  const Json params = j.value("parameters", Json::object());
  for (const auto& [k, v] : params.items()) {
    plan.parameters.emplace_back(k, v.get<double>());
  }
  plan.cost = j.value("cost", 0.0);
  return plan;
}

Json to_json(const FuelReport& r) {
  Json j;
  j["label"] = r.label;
  j["odd_index"] = r.odd_index;
  j["even_index"] = r.even_index;
  j["target"] = r.target;
  j["c1"] = r.c1;
  j["c2"] = r.c2;
  j["c"] = r.c;
  j["b1"] = r.b1;
  j["b2"] = r.b2;
  j["min_j"] = r.min_j;
  j["oracle_min_j"] = r.oracle_min_j;
  j["displacement_convention"] = "x3' = x1 u2 - x2 u1";
  if (r.simulated) {
    j["simulated_endpoint"] = Json::array({r.simulated->x1, r.simulated->x2, r.simulated->x3});
  }
  return j;
}

Json to_json(const LpFuelResult& r) {
  Json j;
  j["p"] = r.p;
  j["cp1"] = r.cp1;
  j["cp2"] = r.cp2;
  j["c"] = r.c;
  j["b1"] = r.b1;
  j["b2"] = r.b2;
  j["min_j"] = r.min_j;
  return j;
}

std::string fuel_comparison_csv(const std::vector<FuelReport>& reports) {
  std::string out = "label,odd_index,even_index,c1,c2,c,b1,b2,min_j,oracle_min_j\n";
  for (const FuelReport& r : reports) {
    out += r.label + ',' + std::to_string(r.odd_index) + ',' + std::to_string(r.even_index);
    for (double v : {r.c1, r.c2, r.c, r.b1, r.b2, r.min_j, r.oracle_min_j}) {
      out += ',';
      out += format_double(v);
    }
    out += '\n';
  }
  return out;
}

std::string trajectory_csv(const Trajectory& traj) {
  std::size_t base = traj.state_labels.size();
  if (traj.system == "gnhi") base = traj.input_labels.size();
  std::string out = "t";
  for (std::size_t i = 0; i < base; ++i) out += "," + traj.state_labels[i];
  for (const auto& l : traj.input_labels) out += "," + l;
  for (std::size_t i = base; i < traj.state_labels.size(); ++i) out += "," + traj.state_labels[i];
  out += '\n';
  for (std::size_t k = 0; k < traj.t.size(); ++k) {
    const auto& s = traj.states[k];
    const std::vector<double> head(s.begin(), s.begin() + base);
    const std::vector<double> tail(s.begin() + base, s.end());
    out += csv_row({&head, &traj.inputs[k], &tail}, traj.t[k]);
  }
  return out;
}

PlotData plot_data(const Trajectory& traj) {
  if (traj.system != "nhi") throw ArgumentError("plot data is defined for the nonholonomic integrator");
  PlotData p{"x1,x3\n", "x1,x2\n", "x1,x2,x3\n"};
  for (const auto& s : traj.states) {
    const std::string x1 = format_double(s[0]), x2 = format_double(s[1]), x3 = format_double(s[2]);
    p.x3_vs_x1 += x1 + ',' + x3 + '\n';
    p.x2_vs_x1 += x1 + ',' + x2 + '\n';
    p.trace3d += x1 + ',' + x2 + ',' + x3 + '\n';
  }
  return p;
}

Rotation rotation_from_values(const std::vector<double>& v) {
  if (v.size() == 3) return so3::exp(so3::Vec3{v[0], v[1], v[2]});
  if (v.size() != 9) throw ArgumentError("rotation needs 9 matrix entries or a 3-entry rotation vector");
  Rotation g;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) g(r, c) = v[3 * r + c];
  }
  if (so3::rotation_defect(g) > 1e-9) throw DomainError("matrix is not a rotation (to 1e-9)");
  return g;
}

namespace {

SystemKind system_from(const std::string& s) {
  if (s == "nhi") return SystemKind::nhi;
  if (s == "gnhi") return SystemKind::gnhi;
  if (s == "so3") return SystemKind::so3;
  throw ArgumentError("unknown system '" + s + "'");
}

CostKind cost_from(const std::string& s) {
  if (s == "none") return CostKind::none;
  if (s == "weighted_l2") return CostKind::weighted_l2;
  if (s == "l1") return CostKind::l1;
  throw ArgumentError("unknown cost '" + s + "'");
}

AttitudeMode mode_from(const std::string& s) {
  if (s == "constant") return AttitudeMode::constant;
  if (s == "weighted_rate") return AttitudeMode::weighted_rate;
  if (s == "underactuated") return AttitudeMode::underactuated;
  throw ArgumentError("unknown attitude mode '" + s + "'");
}

const char* name(SystemKind k) {
  switch (k) {
    case SystemKind::nhi: return "nhi";
    case SystemKind::gnhi: return "gnhi";
    case SystemKind::so3: return "so3";
  }
  return "";
}

const char* name(CostKind k) {
  switch (k) {
    case CostKind::none: return "none";
    case CostKind::weighted_l2: return "weighted_l2";
    case CostKind::l1: return "l1";
  }
  return "";
}

const char* name(AttitudeMode m) {
  switch (m) {
    case AttitudeMode::constant: return "constant";
    case AttitudeMode::weighted_rate: return "weighted_rate";
    case AttitudeMode::underactuated: return "underactuated";
  }
  return "";
}

std::vector<double> flat_values(const Json& j) {
  std::vector<double> v;
  if (j.is_array()) {
    for (const Json& x : j) {
      if (x.is_array()) {
        for (const Json& y : x) v.push_back(y.get<double>());
      } else {
        v.push_back(x.get<double>());
      }
    }
  }
  return v;
}

}  // namespace

ScenarioConfig scenario_from_json(const Json& j) {
  ScenarioConfig c;
  c.system = system_from(j.value("system", std::string("nhi")));
  c.start = flat_values(j.value("start", Json::array()));
  c.target = flat_values(j.value("target", Json::array()));
  c.channels = j.value("channels", c.system == SystemKind::gnhi ? 3 : 2);
  c.family = j.value("family", c.family);
  if (j.contains("pair")) {
    const auto p = j["pair"].get<std::vector<int>>();
    if (p.size() != 2) throw ArgumentError("pair must have two indices");
    c.pair = std::pair{p[0], p[1]};
  }
  if (j.contains("alpha") || j.contains("beta")) {
    c.jacobi = JacobiParams{j.value("alpha", 0.0), j.value("beta", 0.0)};
  }
  c.cost = cost_from(j.value("cost", std::string("none")));
  if (j.contains("interval")) c.interval = interval_from(j["interval"]);
  c.steps = j.value("steps", c.steps);
  if (c.steps < kMinSteps) throw ArgumentError("steps must be >= " + std::to_string(kMinSteps));
  if (j.contains("plan_path")) c.plan_path = j["plan_path"].get<std::string>();
  if (j.contains("trajectory_path")) c.trajectory_path = j["trajectory_path"].get<std::string>();
  c.seed = j.value("seed", std::uint64_t{0});
  c.mode = mode_from(j.value("mode", std::string("constant")));
  c.duration = j.value("duration", c.duration);
  c.q_coeffs = j.value("q", c.q_coeffs);
  c.tie_break = j.value("tie_break", false);
  if (j.contains("inputs")) {
    std::vector<InputSignal> inputs;
    for (const Json& u : j["inputs"]) inputs.push_back(signal_from_json(u));
    c.inputs = std::move(inputs);
  }
  return c;
}

Json to_json(const ScenarioConfig& c) {
  Json j;
  j["system"] = name(c.system);
  j["start"] = c.start;
  j["target"] = c.target;
  j["channels"] = c.channels;
  j["family"] = c.family;
  if (c.pair) j["pair"] = Json::array({c.pair->first, c.pair->second});
  if (c.jacobi) {
    j["alpha"] = c.jacobi->alpha;
    j["beta"] = c.jacobi->beta;
  }
  j["cost"] = name(c.cost);
  j["interval"] = interval_json(c.interval);
  j["steps"] = c.steps;
  if (c.plan_path) j["plan_path"] = *c.plan_path;
  if (c.trajectory_path) j["trajectory_path"] = *c.trajectory_path;
  j["seed"] = c.seed;
  j["mode"] = name(c.mode);
  j["duration"] = c.duration;
  j["q"] = c.q_coeffs;
  j["tie_break"] = c.tie_break;
  if (c.inputs) {
    Json arr = Json::array();
    for (const InputSignal& u : *c.inputs) arr.push_back(to_json(u));
    j["inputs"] = arr;
  }
  return j;
}

}  // namespace orthosteer::io
