#pragma once

// Orthogonal families on [-1, 1] (canonical) or [0, 1] (shifted), their
// weights, and exact derivatives.

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>

#include "orthosteer/errors.hpp"
#include "orthosteer/jet.hpp"

namespace orthosteer {

enum class Family { legendre, chebyshev_first, chebyshev_second, jacobi, trig_sin, trig_cos };
enum class Domain { canonical, shifted };

std::string_view to_string(Family f);
std::string_view to_string(Domain d);
Family family_from_string(std::string_view name);
Domain domain_from_string(std::string_view name);

/// Closed real interval [lo, hi].
struct Interval {
  double lo = -1.0;
  double hi = 1.0;

  double length() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
  double half() const { return 0.5 * (hi - lo); }
  bool contains(double t) const { return t >= lo && t <= hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

inline constexpr Interval kCanonical{-1.0, 1.0};
inline constexpr Interval kShifted{0.0, 1.0};

Interval domain_interval(Domain d);

/// (1 - tau)^p (1 + tau)^q on the canonical variable tau. Every family weight
/// and every diagonal cost weight in the library has this form.
struct EndpointPower {
  double p = 0.0;
  double q = 0.0;

  bool trivial() const { return p == 0.0 && q == 0.0; }
  friend EndpointPower operator+(EndpointPower a, EndpointPower b) { return {a.p + b.p, a.q + b.q}; }
  friend bool operator==(const EndpointPower&, const EndpointPower&) = default;
};

using WeightFn = EndpointPower;

struct JacobiParams {
  double alpha = 0.0;
  double beta = 0.0;
  friend bool operator==(const JacobiParams&, const JacobiParams&) = default;
};

/// Highest index accepted for evaluation.
inline constexpr int kMaxIndex = 64;

class BasisElement {
 public:
  BasisElement(Family family, int index, Domain domain = Domain::canonical,
               std::optional<JacobiParams> jacobi = std::nullopt);

  Family family() const { return family_; }
  int index() const { return index_; }
  Domain domain() const { return domain_; }
  const std::optional<JacobiParams>& jacobi() const { return jacobi_; }
  Interval interval() const { return domain_interval(domain_); }

  /// Affine map from the element's interval to the canonical variable.
  double to_canonical(double t) const { return domain_ == Domain::shifted ? 2.0 * t - 1.0 : t; }
  /// d(tau)/dt for the affine map above.
  double canonical_rate() const { return domain_ == Domain::shifted ? 2.0 : 1.0; }

  friend bool operator==(const BasisElement&, const BasisElement&) = default;

 private:
  Family family_;
  int index_;
  Domain domain_;
  std::optional<JacobiParams> jacobi_;
};

BasisElement legendre(int n, Domain d = Domain::canonical);
BasisElement chebyshev_first(int n, Domain d = Domain::canonical);
BasisElement chebyshev_second(int n, Domain d = Domain::canonical);
BasisElement jacobi(int n, double alpha, double beta, Domain d = Domain::canonical);
BasisElement trig_sin(int n, Domain d = Domain::canonical);
BasisElement trig_cos(int n, Domain d = Domain::canonical);

/// Same element re-mapped onto [0, 1]; orthogonal there under the transported weight.
BasisElement shift(const BasisElement& b);

/// Family weight in the canonical variable.
WeightFn family_weight(const BasisElement& b);

/// Evaluate (1 - tau)^p (1 + tau)^q. Throws DomainError outside [-1, 1].
double eval_weight(const WeightFn& w, double tau);
Jet eval_weight(const WeightFn& w, const Jet& tau);

/// Value at t (t in b.interval(), closed). Stable three-term recurrence.
double eval(const BasisElement& b, double t);

/// Exact derivative with respect to t via the family's derivative identity.
/// Throws DomainError at the endpoints for Chebyshev second kind, whose
/// identity divides by t^2 - 1.
double eval_derivative(const BasisElement& b, double t);

/// Value and derivatives up to third order with respect to t.
Jet eval_jet(const BasisElement& b, double t);

/// Squared norm of the element under its own weight on its own interval.
double norm_squared(const BasisElement& b);

/// +1 even, -1 odd, 0 when the element has no parity (Jacobi with alpha != beta).
int parity(const BasisElement& b);

namespace detail {

/// Generic recurrence in the canonical variable. S is double or a Taylor jet.
template <class S>
S eval_canonical(const BasisElement& b, const S& tau) {
  using std::cos;
  using std::sin;
  const int n = b.index();
  switch (b.family()) {
    case Family::trig_sin:
      return sin(S(std::numbers::pi * n) * tau);
    case Family::trig_cos:
      return cos(S(std::numbers::pi * n) * tau);
    default:
      break;
  }
  if (n == 0) return S(1.0);

  S prev(1.0);
  S cur(0.0);
  switch (b.family()) {
    case Family::legendre:
    case Family::chebyshev_first:
      cur = tau;
      break;
    case Family::chebyshev_second:
      cur = 2.0 * tau;
      break;
    case Family::jacobi: {
      const double a = b.jacobi()->alpha, c = b.jacobi()->beta;
      cur = S(0.5 * (a - c)) + 0.5 * (a + c + 2.0) * tau;
      break;
    }
    default:
      break;
  }
  for (int k = 1; k < n; ++k) {
    S next(0.0);
    const double kk = k;
    switch (b.family()) {
      case Family::legendre:
        next = ((2.0 * kk + 1.0) * tau * cur - kk * prev) * (1.0 / (kk + 1.0));
        break;
      case Family::chebyshev_first:
      case Family::chebyshev_second:
        next = 2.0 * tau * cur - prev;
        break;
      case Family::jacobi: {
        const double a = b.jacobi()->alpha, c = b.jacobi()->beta;
        const double s = 2.0 * kk + a + c;
        const double d = 2.0 * (kk + 1.0) * (kk + a + c + 1.0) * s;
        const double lin = (s + 1.0) * (s + 2.0) * s;
        const double cst = (s + 1.0) * (a * a - c * c);
        const double back = 2.0 * (kk + a) * (kk + c) * (s + 2.0);
        next = ((S(cst) + lin * tau) * cur - back * prev) * (1.0 / d);
        break;
      }
      default:
        break;
    }
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace detail

}  // namespace orthosteer
