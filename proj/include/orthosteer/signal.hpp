#pragma once

// Scalar control signals built from scaled basis elements, plus the
// machinery for integrating them when a term carries the (1 - t^2)^(-1/2)
// Chebyshev weight: such integrals are taken in s with t = mid - half cos(s),
// where dt = half sin(s) ds cancels the endpoint singularity exactly.

#include <functional>
#include <initializer_list>
#include <span>
#include <variant>
#include <vector>

#include "orthosteer/jet.hpp"
#include "orthosteer/orthopoly.hpp"

namespace orthosteer {

/// scale * element(t), times the family weight when `weighted`.
struct BasisTerm {
  BasisElement element;
  double scale = 1.0;
  bool weighted = false;
  friend bool operator==(const BasisTerm&, const BasisTerm&) = default;
};

struct ConstantTerm {
  double value = 0.0;
  friend bool operator==(const ConstantTerm&, const ConstantTerm&) = default;
};

/// amplitude * cos(frequency * t + phase)
struct SinusoidTerm {
  double amplitude = 0.0;
  double frequency = 0.0;
  double phase = 0.0;
  friend bool operator==(const SinusoidTerm&, const SinusoidTerm&) = default;
};

/// scale / q(t), q(t) = sum_i coeffs[i] t^i. q must stay positive on the
/// interval of use.
struct ReciprocalTerm {
  double scale = 0.0;
  std::vector<double> coeffs;
  friend bool operator==(const ReciprocalTerm&, const ReciprocalTerm&) = default;
};

using Term = std::variant<BasisTerm, ConstantTerm, SinusoidTerm, ReciprocalTerm>;

class InputSignal {
 public:
  InputSignal() = default;
  InputSignal(std::initializer_list<Term> terms) : terms_(terms) {}
  explicit InputSignal(std::vector<Term> terms) : terms_(std::move(terms)) {}

  static InputSignal basis(const BasisElement& b, double scale = 1.0, bool weighted = false) {
    return InputSignal{BasisTerm{b, scale, weighted}};
  }
  static InputSignal constant(double value) { return InputSignal{ConstantTerm{value}}; }

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  InputSignal& add(Term t) {
    terms_.push_back(std::move(t));
    return *this;
  }
  InputSignal scaled(double factor) const;

  friend bool operator==(const InputSignal&, const InputSignal&) = default;

 private:
  std::vector<Term> terms_;
};

/// Value at t. Infinite at an endpoint where a weighted term is singular.
double eval(const InputSignal& u, double t);
/// Value and derivatives with respect to t.
Jet eval_jet(const InputSignal& u, double t);

/// Scalar function of t returning its value and derivatives at t; used for SL
/// coefficients, cost weights and candidate eigenfunctions.
using JetFn = std::function<Jet(double)>;
JetFn as_jet_fn(const InputSignal& u);
JetFn as_jet_fn(const BasisElement& b);

/// Point of an interval in the normalized variable tau = (2t - lo - hi) / (hi - lo),
/// carrying 1 -/+ tau computed without cancellation near the endpoints.
struct SamplePoint {
  double t = 0.0;
  double tau = 0.0;
  double one_minus = 1.0;
  double one_plus = 1.0;

  static SamplePoint from_t(const Interval& iv, double t);
  /// t = mid - half cos(s), s in [0, pi].
  static SamplePoint from_angle(const Interval& iv, double s);
};

/// Parameterization used to integrate over an interval: either t itself, or
/// the angle s above when some integrand term is singular at the endpoints.
class TimeMap {
 public:
  TimeMap(Interval iv, bool substituted) : iv_(iv), substituted_(substituted) {}

  /// Chooses substitution iff any of the given signals (times `extra`) is
  /// singular on iv or has a fractional endpoint exponent. Throws CapabilityError when a singular term lives on a
  /// domain other than iv.
  static TimeMap for_signals(const Interval& iv, std::span<const InputSignal* const> signals,
                             EndpointPower extra = {});

  const Interval& interval() const { return iv_; }
  bool substituted() const { return substituted_; }
  /// Range of the integration parameter.
  Interval parameter_range() const;
  SamplePoint point(double sigma) const;
  double time(double sigma) const { return point(sigma).t; }

  /// u(t(sigma)) * dt/dsigma, finite everywhere for admissible signals.
  double rate(const InputSignal& u, double sigma) const;

  /// prod_i f_i(t) * w(tau) * dt/dsigma, expanded term by term so that the
  /// singular powers combine analytically.
  double product_rate(std::span<const InputSignal* const> factors, const WeightFn& w,
                      double sigma) const;

 private:
  Interval iv_;
  bool substituted_;
};

/// Smallest endpoint exponents over all terms of u on iv (0 for regular terms).
EndpointPower singular_power(const InputSignal& u, const Interval& iv);

/// True when some term of u is unbounded at an endpoint of iv.
bool is_singular(const InputSignal& u, const Interval& iv);

/// True when some weighted term of u has a non-integer endpoint exponent on
/// iv (bounded but not smooth there, e.g. sqrt(1 - t^2)).
bool has_fractional_power(const InputSignal& u, const Interval& iv);

/// integral over iv of prod_i f_i(t) * w(tau) dt. Throws IntegrabilityError when
/// the combined endpoint exponent is <= -1.
double integrate_product(std::span<const InputSignal* const> factors, const WeightFn& w,
                         const Interval& iv);

/// Weighted inner product <f, g>_w on iv.
double inner_product(const InputSignal& f, const InputSignal& g, const WeightFn& w,
                     const Interval& iv);
double inner_product(const BasisElement& f, const BasisElement& g, const WeightFn& w,
                     const Interval& iv);

/// integral over iv of u(t) dt.
double integral(const InputSignal& u, const Interval& iv);

/// integral over iv of |u(t)| dt, with the interval split at sign changes of u
/// (located on a 512-point scan and refined by bisection).
double l1_norm(const InputSignal& u, const Interval& iv);

/// integral over iv of |u(t)|^p dt, same splitting as l1_norm. Singular
/// signals are supported only for p = 1.
double lp_integral(const InputSignal& u, const Interval& iv, double p);

}  // namespace orthosteer
