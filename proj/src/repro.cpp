#include "orthosteer/repro.hpp"

#include <cmath>
#include <cstdio>

#include "orthosteer/fuel_l1.hpp"
#include "orthosteer/optimal_energy.hpp"
#include "orthosteer/steering.hpp"

namespace orthosteer {

namespace {

constexpr double kPrinted4 = 1e-4;  // values printed with four decimals
constexpr int kSteps = 4000;

double first_scale(const InputSignal& u) { return std::get<BasisTerm>(u.terms().front()).scale; }

}  // namespace

double ReproRow::delta() const { return std::fabs(computed - reference); }

std::string ReproRow::status() const {
  if (delta() <= tolerance) return "pass";
  return known_deviation ? "paper-deviation" : "fail";
}

std::vector<ReproRow> paper_repro() {
  std::vector<ReproRow> rows;

  const InputSignal p1s = InputSignal::basis(legendre(1, Domain::shifted));
  const InputSignal p2s = InputSignal::basis(legendre(2, Domain::shifted));
  rows.push_back({"shifted Legendre (P1, P2) coupling on [0,1]", 1.0 / 15.0,
                  coupling_displacement(p1s, p2s, kShifted), 1e-10});

  const SteeringPlan leg = plan_nhi({}, {0.0, 0.0, 1.0}, make_pair("legendre", kCanonical), kCanonical);
  rows.push_back({"Legendre steering amplitude", std::sqrt(15.0 / 4.0),
                  first_scale(leg.phases.back().inputs[0]), 1e-9});
  rows.push_back({"Legendre steering simulated x3", 1.0,
                  simulate_plan(leg, kSteps).terminal()[2], 1e-6});

  const ChebOptimalSolution cheb = cheb_optimal_inputs(1.0);
  rows.push_back({"Chebyshev optimal simulated x3", 1.0,
                  nhi_terminal(integrate_nhi({cheb.u1, cheb.u2}, {}, kCanonical, kSteps)).x3, 1e-6});
  rows.push_back({"Chebyshev optimal weighted cost", 1.0,
                  weighted_cost(cheb.u1, cheb.u2, WeightedCost::chebyshev()), 1e-9});

  const InputSignal t1w = InputSignal::basis(chebyshev_first(1), 1.0, true);
  const InputSignal t2w = InputSignal::basis(chebyshev_first(2), 1.0, true);
  rows.push_back({"weighted Chebyshev (T1, T2) coupling", 5.0 / 3.0,
                  coupling_displacement(t1w, t2w, kCanonical), 1e-9, true});

  const PairSpec lp = make_pair("legendre", kCanonical);
  const FuelReport lf = fuel_min(fuel_constants(lp.odd_signal(), lp.even_signal(), 1.0, kCanonical));
  rows.push_back({"fuel Legendre c1", 1.0, lf.c1, kPrinted4});
  rows.push_back({"fuel Legendre c2", 0.7698, lf.c2, kPrinted4});
  rows.push_back({"fuel Legendre |c|", 3.75, std::fabs(lf.c), kPrinted4});
  rows.push_back({"fuel Legendre min J", 3.3981, lf.min_j, kPrinted4});

  const PairSpec tp = make_pair("trig", kCanonical);
  const FuelReport tf = fuel_min(fuel_constants(tp.odd_signal(), tp.even_signal(), 1.0, kCanonical));
  rows.push_back({"fuel trig c1", 1.2732, tf.c1, kPrinted4});
  rows.push_back({"fuel trig c2", 1.2732, tf.c2, kPrinted4});
  rows.push_back({"fuel trig |c|", 3.1407, std::fabs(tf.c), kPrinted4, true});
  rows.push_back({"fuel trig min J", 4.5135, tf.min_j, kPrinted4, true});
  return rows;
}

std::string format_repro_table(const std::vector<ReproRow>& rows) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof(line), "%-46s %16s %16s %12s  %s\n", "item", "reference", "computed",
                "|delta|", "status");
  out += line;
  for (const ReproRow& r : rows) {
    std::snprintf(line, sizeof(line), "%-46s %16.10g %16.10g %12.3e  %s\n", r.item.c_str(),
                  r.reference, r.computed, r.delta(), r.status().c_str());
    out += line;
  }
  return out;
}

}  // namespace orthosteer
