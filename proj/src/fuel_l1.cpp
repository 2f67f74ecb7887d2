#include "orthosteer/fuel_l1.hpp"

#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <cstdint>
#include <limits>

namespace orthosteer {

namespace {

constexpr int kGridPoints = 10000;
constexpr double kGridDecades = 3.0;

// Grid in x = ln b1 over sqrt(|c|) * 10^[-3, 3], then Brent refinement on
// the bracketing cells.
template <class F>
std::pair<double, double> log_grid_minimum(const F& j, double centre) {
  const double span = kGridDecades * std::log(10.0);
  const double x0 = std::log(centre) - span, x1 = std::log(centre) + span;
  const double dx = (x1 - x0) / (kGridPoints - 1);
  int best = 0;
  double best_j = std::numeric_limits<double>::infinity();
  for (int i = 0; i < kGridPoints; ++i) {
    const double v = j(std::exp(x0 + i * dx));
    if (v < best_j) {
      best_j = v;
      best = i;
    }
  }
  const double lo = x0 + std::max(best - 1, 0) * dx;
  const double hi = x0 + std::min(best + 1, kGridPoints - 1) * dx;
  std::uintmax_t iters = 200;
  const auto [x, v] = boost::math::tools::brent_find_minima(
      [&](double x) { return j(std::exp(x)); }, lo, hi, std::numeric_limits<double>::digits / 2,
      iters);
  if (v < best_j) return {std::exp(x), v};
  return {std::exp(x0 + best * dx), best_j};
}

}  // namespace

FuelConstants fuel_constants(const InputSignal& u1, const InputSignal& u2, double a,
                             const Interval& iv) {
  FuelConstants k;
  k.displacement = coupling_displacement(u1, u2, iv);
  if (std::fabs(k.displacement) < 1e-12) {
    throw PlannerError("inputs produce no coupling displacement");
  }
  k.c1 = l1_norm(u1, iv);
  k.c2 = l1_norm(u2, iv);
  k.c = a / k.displacement;
  return k;
}

double fuel_oracle(const FuelConstants& k) {
  const double ac = std::fabs(k.c);
  return log_grid_minimum([&](double b1) { return b1 * k.c1 + ac * k.c2 / b1; }, std::sqrt(ac))
      .second;
}

FuelReport fuel_min(const FuelConstants& k) {
  if (!(k.c1 > 0.0) || !(k.c2 > 0.0)) throw ArgumentError("fuel constants c1, c2 must be positive");
  if (k.c == 0.0 || !std::isfinite(k.c)) throw ArgumentError("amplitude product c must be nonzero");
  FuelReport r;
  r.c1 = k.c1;
  r.c2 = k.c2;
  r.c = k.c;
  const double ac = std::fabs(k.c);
  r.b1 = std::sqrt(ac * k.c2 / k.c1);
  r.b2 = k.c / r.b1;
  r.min_j = 2.0 * std::sqrt(ac * k.c1 * k.c2);
  r.oracle_min_j = fuel_oracle(k);
  return r;
}

LpFuelResult fuel_min_lp(const InputSignal& u1, const InputSignal& u2, double a,
                         const Interval& iv, double p) {
  if (!(p >= 1.0)) throw ArgumentError("exponent p must be >= 1");
  const double d = coupling_displacement(u1, u2, iv);
  if (std::fabs(d) < 1e-12) throw PlannerError("inputs produce no coupling displacement");
  LpFuelResult r;
  r.p = p;
  r.cp1 = lp_integral(u1, iv, p);
  r.cp2 = lp_integral(u2, iv, p);
  r.c = a / d;
  if (r.c == 0.0) return r;
  const double ac = std::fabs(r.c);
  const auto [b1, j] = log_grid_minimum(
      [&](double b1) { return std::pow(b1, p) * r.cp1 + std::pow(ac / b1, p) * r.cp2; },
      std::sqrt(ac));
  r.b1 = b1;
  r.b2 = r.c / b1;
  r.min_j = j;
  return r;
}

std::vector<FuelReport> compare_families(const std::vector<FuelCandidate>& candidates, double a,
                                         const Interval& iv, int steps) {
  std::vector<FuelReport> reports;
  for (const FuelCandidate& cand : candidates) {
    const InputSignal u1 = cand.pair.odd_signal();
    const InputSignal u2 = cand.pair.even_signal();
    FuelReport r = fuel_min(fuel_constants(u1, u2, a, iv));
    r.label = cand.label;
    r.odd_index = cand.pair.odd.index();
    r.even_index = cand.pair.even.index();
    r.target = a;
    const Trajectory traj = integrate_nhi({u1.scaled(r.b1), u2.scaled(r.b2)}, {}, iv, steps);
    r.simulated = nhi_terminal(traj);
    if (std::fabs(r.simulated->x3 - a) > 1e-6 || std::fabs(r.simulated->x1) > 1e-6 ||
        std::fabs(r.simulated->x2) > 1e-6) {
      throw PlannerError("simulated transfer for " + cand.label + " misses the target");
    }
    reports.push_back(std::move(r));
  }
  std::stable_sort(reports.begin(), reports.end(),
                   [](const FuelReport& x, const FuelReport& y) { return x.min_j < y.min_j; });
  return reports;
}

}  // namespace orthosteer
