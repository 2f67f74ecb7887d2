#include "orthosteer/orthopoly.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

namespace orthosteer {

namespace {

constexpr double kPi = std::numbers::pi;

// Slack so that t = hi computed as lo + n * h is not rejected over rounding.
constexpr double kIntervalSlack = 1e-13;

void check_in_interval(const BasisElement& b, double t) {
  const Interval iv = b.interval();
  if (!(t >= iv.lo - kIntervalSlack && t <= iv.hi + kIntervalSlack)) {
    std::ostringstream os;
    os << "t = " << t << " outside [" << iv.lo << ", " << iv.hi << "] for "
       << to_string(b.family()) << " index " << b.index();
    throw DomainError(os.str());
  }
}

double clamp_canonical(double tau) { return std::fmax(-1.0, std::fmin(1.0, tau)); }

}  // namespace

std::string_view to_string(Family f) {
  switch (f) {
    case Family::legendre: return "legendre";
    case Family::chebyshev_first: return "chebyshev_first";
    case Family::chebyshev_second: return "chebyshev_second";
    case Family::jacobi: return "jacobi";
    case Family::trig_sin: return "trig_sin";
    case Family::trig_cos: return "trig_cos";
  }
  return "?";
}

std::string_view to_string(Domain d) { return d == Domain::shifted ? "shifted" : "canonical"; }

Family family_from_string(std::string_view name) {
  for (Family f : {Family::legendre, Family::chebyshev_first, Family::chebyshev_second,
                   Family::jacobi, Family::trig_sin, Family::trig_cos}) {
    if (to_string(f) == name) return f;
  }
  throw ArgumentError("unknown basis family '" + std::string(name) + "'");
}

Domain domain_from_string(std::string_view name) {
  if (name == "canonical") return Domain::canonical;
  if (name == "shifted") return Domain::shifted;
  throw ArgumentError("unknown domain '" + std::string(name) + "'");
}

Interval domain_interval(Domain d) { return d == Domain::shifted ? kShifted : kCanonical; }

BasisElement::BasisElement(Family family, int index, Domain domain,
                           std::optional<JacobiParams> jacobi)
    : family_(family), index_(index), domain_(domain), jacobi_(jacobi) {
  if (index < 0) throw ArgumentError("basis index must be non-negative");
  if (index > kMaxIndex) {
    throw CapabilityError("basis index " + std::to_string(index) + " above cap " +
                          std::to_string(kMaxIndex));
  }
  if ((family == Family::jacobi) != jacobi.has_value()) {
    throw ArgumentError("Jacobi parameters are required for, and only for, the jacobi family");
  }
  if (jacobi && !(jacobi->alpha > -1.0 && jacobi->beta > -1.0)) {
    throw DomainError("Jacobi parameters must satisfy alpha, beta > -1");
  }
  if (family == Family::trig_sin && index == 0) {
    throw ArgumentError("trig_sin index 0 is the zero function");
  }
}

BasisElement legendre(int n, Domain d) { return {Family::legendre, n, d}; }
BasisElement chebyshev_first(int n, Domain d) { return {Family::chebyshev_first, n, d}; }
BasisElement chebyshev_second(int n, Domain d) { return {Family::chebyshev_second, n, d}; }
BasisElement jacobi(int n, double alpha, double beta, Domain d) {
  return {Family::jacobi, n, d, JacobiParams{alpha, beta}};
}
BasisElement trig_sin(int n, Domain d) { return {Family::trig_sin, n, d}; }
BasisElement trig_cos(int n, Domain d) { return {Family::trig_cos, n, d}; }

BasisElement shift(const BasisElement& b) {
  return {b.family(), b.index(), Domain::shifted, b.jacobi()};
}

WeightFn family_weight(const BasisElement& b) {
  switch (b.family()) {
    case Family::chebyshev_first: return {-0.5, -0.5};
    case Family::chebyshev_second: return {0.5, 0.5};
    case Family::jacobi: return {b.jacobi()->alpha, b.jacobi()->beta};
    default: return {0.0, 0.0};
  }
}

double eval_weight(const WeightFn& w, double tau) {
  if (tau < -1.0 - kIntervalSlack || tau > 1.0 + kIntervalSlack) {
    throw DomainError("weight evaluated outside [-1, 1]");
  }
  tau = clamp_canonical(tau);
  double v = 1.0;
  if (w.p != 0.0) v *= std::pow(1.0 - tau, w.p);
  if (w.q != 0.0) v *= std::pow(1.0 + tau, w.q);
  return v;
}

Jet eval_weight(const WeightFn& w, const Jet& tau) {
  Jet v(1.0);
  if (w.p != 0.0) v *= pow(Jet(1.0) - tau, w.p);
  if (w.q != 0.0) v *= pow(Jet(1.0) + tau, w.q);
  return v;
}

double eval(const BasisElement& b, double t) {
  check_in_interval(b, t);
  return detail::eval_canonical(b, clamp_canonical(b.to_canonical(t)));
}

double eval_derivative(const BasisElement& b, double t) {
  check_in_interval(b, t);
  const double tau = clamp_canonical(b.to_canonical(t));
  const double rate = b.canonical_rate();
  const int n = b.index();
  switch (b.family()) {
    case Family::legendre: {
      // P'_{k+1} = P'_{k-1} + (2k + 1) P_k
      if (n == 0) return 0.0;
      double p_prev = 1.0, p_cur = tau;   // P_{k-1}, P_k
      double d_prev = 0.0, d_cur = 1.0;   // P'_{k-1}, P'_k
      for (int k = 1; k < n; ++k) {
        const double p_next = ((2.0 * k + 1.0) * tau * p_cur - k * p_prev) / (k + 1.0);
        const double d_next = d_prev + (2.0 * k + 1.0) * p_cur;
        p_prev = p_cur;
        p_cur = p_next;
        d_prev = d_cur;
        d_cur = d_next;
      }
      return rate * d_cur;
    }
    case Family::chebyshev_first:
      if (n == 0) return 0.0;
      return rate * n * detail::eval_canonical(chebyshev_second(n - 1), tau);
    case Family::chebyshev_second: {
      if (n == 0) return 0.0;
      const double denom = tau * tau - 1.0;
      if (denom == 0.0) {
        throw DomainError("U_n derivative identity is singular at the interval endpoints");
      }
      const double t_next = detail::eval_canonical(chebyshev_first(n + 1), tau);
      const double u_n = detail::eval_canonical(chebyshev_second(n), tau);
      return rate * ((n + 1.0) * t_next - tau * u_n) / denom;
    }
    case Family::jacobi: {
      if (n == 0) return 0.0;
      const auto [a, c] = *b.jacobi();
      return rate * 0.5 * (n + a + c + 1.0) * detail::eval_canonical(jacobi(n - 1, a + 1.0, c + 1.0), tau);
    }
    case Family::trig_sin:
      return rate * kPi * n * std::cos(kPi * n * tau);
    case Family::trig_cos:
      return -rate * kPi * n * std::sin(kPi * n * tau);
  }
  return 0.0;
}

Jet eval_jet(const BasisElement& b, double t) {
  check_in_interval(b, t);
  Jet tau = Jet::variable(clamp_canonical(b.to_canonical(t)));
  tau.coeff(1) = b.canonical_rate();
  return detail::eval_canonical(b, tau);
}

double norm_squared(const BasisElement& b) {
  const int n = b.index();
  // Shifting halves the measure.
  const double scale = b.domain() == Domain::shifted ? 0.5 : 1.0;
  double canonical = 0.0;
  switch (b.family()) {
    case Family::legendre:
      canonical = 2.0 / (2.0 * n + 1.0);
      break;
    case Family::chebyshev_first:
      canonical = n == 0 ? kPi : kPi / 2.0;
      break;
    case Family::chebyshev_second:
      canonical = kPi / 2.0;
      break;
    case Family::jacobi: {
      const auto [a, c] = *b.jacobi();
      if (n == 0) {
        canonical = std::exp((a + c + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) +
                             std::lgamma(c + 1.0) - std::lgamma(a + c + 2.0));
        break;
      }
      const double lg = (a + c + 1.0) * std::log(2.0) - std::log(2.0 * n + a + c + 1.0) +
                        std::lgamma(n + a + 1.0) + std::lgamma(n + c + 1.0) -
                        std::lgamma(n + a + c + 1.0) - std::lgamma(n + 1.0);
      canonical = std::exp(lg);
      break;
    }
    case Family::trig_sin:
      canonical = 1.0;
      break;
    case Family::trig_cos:
      canonical = n == 0 ? 2.0 : 1.0;
      break;
  }
  return scale * canonical;
}

int parity(const BasisElement& b) {
  switch (b.family()) {
    case Family::trig_sin: return -1;
    case Family::trig_cos: return 1;
    case Family::jacobi:
      if (b.jacobi()->alpha != b.jacobi()->beta) return 0;
      [[fallthrough]];
    default:
      return b.index() % 2 == 0 ? 1 : -1;
  }
}

}  // namespace orthosteer
