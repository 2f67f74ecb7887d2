#include "orthosteer/signal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "orthosteer/quadrature.hpp"

namespace orthosteer {

namespace {

constexpr double kPi = std::numbers::pi;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// value * (1 - tau)^power.p * (1 + tau)^power.q at a sample point.
struct Piece {
  double value;
  EndpointPower power;
};

double poly(const std::vector<double>& coeffs, double t) {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * t + *it;
  return acc;
}

bool on_own_domain(const BasisElement& b, const Interval& iv) { return b.interval() == iv; }

double term_value(const Term& term, double t) {
  return std::visit(
      Overloaded{
          [&](const BasisTerm& bt) {
            double v = bt.scale * eval(bt.element, t);
            if (bt.weighted) {
              v *= eval_weight(family_weight(bt.element), bt.element.to_canonical(t));
            }
            return v;
          },
          [](const ConstantTerm& c) { return c.value; },
          [&](const SinusoidTerm& s) { return s.amplitude * std::cos(s.frequency * t + s.phase); },
          [&](const ReciprocalTerm& r) { return r.scale / poly(r.coeffs, t); },
      },
      term);
}

void collect_pieces(const InputSignal& u, const Interval& iv, const SamplePoint& pt,
                    std::vector<Piece>& out) {
  for (const Term& term : u.terms()) {
    if (const auto* bt = std::get_if<BasisTerm>(&term); bt && on_own_domain(bt->element, iv)) {
      const double f = bt->scale * detail::eval_canonical(bt->element, pt.tau);
      out.push_back({f, bt->weighted ? family_weight(bt->element) : EndpointPower{}});
    } else {
      out.push_back({term_value(term, pt.t), {}});
    }
  }
}

double combine(const Piece& piece, const SamplePoint& pt, EndpointPower extra) {
  const EndpointPower e = piece.power + extra;
  double v = piece.value;
  if (v == 0.0) return 0.0;
  if (e.p != 0.0) v *= std::pow(pt.one_minus, e.p);
  if (e.q != 0.0) v *= std::pow(pt.one_plus, e.q);
  return v;
}

constexpr EndpointPower kAngleJacobian{0.5, 0.5};

// Endpoint exponent of a single basis term on iv; throws if the term is
// singular at a point of iv other than an endpoint of its own domain.
EndpointPower term_power(const BasisTerm& bt, const Interval& iv) {
  if (!bt.weighted) return {};
  const WeightFn w = family_weight(bt.element);
  if (on_own_domain(bt.element, iv)) return {std::min(w.p, 0.0), std::min(w.q, 0.0)};
  const Interval dom = bt.element.interval();
  const bool hits_hi = w.p < 0.0 && iv.contains(dom.hi);
  const bool hits_lo = w.q < 0.0 && iv.contains(dom.lo);
  if (hits_hi || hits_lo) {
    throw CapabilityError("singular " + std::string(to_string(bt.element.family())) +
                          " input is only supported on its own interval [" +
                          std::to_string(dom.lo) + ", " + std::to_string(dom.hi) + "]");
  }
  return {};
}

double scan_integral(const TimeMap& tm, const InputSignal& u, double p) {
  const Interval range = tm.parameter_range();
  auto f = [&](double sigma) { return tm.rate(u, sigma); };
  constexpr int kScan = 512;
  std::vector<double> cuts{range.lo};
  double prev_x = range.lo;
  double prev_f = f(prev_x);
  for (int i = 1; i <= kScan; ++i) {
    const double x = range.lo + range.length() * i / kScan;
    const double fx = f(x);
    if (prev_f == 0.0) {
      if (cuts.back() != prev_x) cuts.push_back(prev_x);
    } else if (fx != 0.0 && std::signbit(fx) != std::signbit(prev_f)) {
      double a = prev_x, b = x, fa = prev_f;
      for (int it = 0; it < 200 && b - a > 1e-15 * std::max(1.0, std::fabs(b)); ++it) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if (fm == 0.0) {
          a = b = m;
          break;
        }
        if (std::signbit(fm) == std::signbit(fa)) {
          a = m;
          fa = fm;
        } else {
          b = m;
        }
      }
      cuts.push_back(0.5 * (a + b));
    }
    prev_x = x;
    prev_f = fx;
  }
  if (cuts.back() != range.hi) cuts.push_back(range.hi);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    total += integrate([&](double sigma) { return std::pow(std::fabs(f(sigma)), p); }, cuts[i],
                       cuts[i + 1]);
  }
  return total;
}

}  // namespace

InputSignal InputSignal::scaled(double factor) const {
  InputSignal out = *this;
  for (Term& term : out.terms_) {
    std::visit(Overloaded{
                   [&](BasisTerm& bt) { bt.scale *= factor; },
                   [&](ConstantTerm& c) { c.value *= factor; },
                   [&](SinusoidTerm& s) { s.amplitude *= factor; },
                   [&](ReciprocalTerm& r) { r.scale *= factor; },
               },
               term);
  }
  return out;
}

double eval(const InputSignal& u, double t) {
  double acc = 0.0;
  for (const Term& term : u.terms()) acc += term_value(term, t);
  return acc;
}

Jet eval_jet(const InputSignal& u, double t) {
  Jet acc;
  const Jet tj = Jet::variable(t);
  for (const Term& term : u.terms()) {
    acc += std::visit(
        Overloaded{
            [&](const BasisTerm& bt) {
              Jet v = eval_jet(bt.element, t) * bt.scale;
              if (bt.weighted) {
                Jet tau = Jet::variable(bt.element.to_canonical(t));
                tau.coeff(1) = bt.element.canonical_rate();
                v *= eval_weight(family_weight(bt.element), tau);
              }
              return v;
            },
            [](const ConstantTerm& c) { return Jet(c.value); },
            [&](const SinusoidTerm& s) {
              return s.amplitude * cos(s.frequency * tj + Jet(s.phase));
            },
            [&](const ReciprocalTerm& r) {
              Jet q;
              for (auto it = r.coeffs.rbegin(); it != r.coeffs.rend(); ++it) q = q * tj + Jet(*it);
              return r.scale / q;
            },
        },
        term);
  }
  return acc;
}

JetFn as_jet_fn(const InputSignal& u) {
  return [u](double t) { return eval_jet(u, t); };
}

JetFn as_jet_fn(const BasisElement& b) {
  return [b](double t) { return eval_jet(b, t); };
}

SamplePoint SamplePoint::from_t(const Interval& iv, double t) {
  SamplePoint pt;
  pt.t = t;
  pt.one_minus = std::max(0.0, (iv.hi - t) / iv.half());
  pt.one_plus = std::max(0.0, (t - iv.lo) / iv.half());
  pt.tau = std::clamp((t - iv.mid()) / iv.half(), -1.0, 1.0);
  return pt;
}

SamplePoint SamplePoint::from_angle(const Interval& iv, double s) {
  SamplePoint pt;
  const double c = std::cos(s);
  const double sh = std::sin(0.5 * s), ch = std::cos(0.5 * s);
  pt.tau = -c;
  pt.one_plus = 2.0 * sh * sh;
  pt.one_minus = 2.0 * ch * ch;
  pt.t = iv.mid() + iv.half() * pt.tau;
  return pt;
}

EndpointPower singular_power(const InputSignal& u, const Interval& iv) {
  EndpointPower out;
  for (const Term& term : u.terms()) {
    if (const auto* bt = std::get_if<BasisTerm>(&term)) {
      const EndpointPower e = term_power(*bt, iv);
      out.p = std::min(out.p, e.p);
      out.q = std::min(out.q, e.q);
    }
  }
  return out;
}

bool is_singular(const InputSignal& u, const Interval& iv) {
  const EndpointPower e = singular_power(u, iv);
  return e.p < 0.0 || e.q < 0.0;
}

bool has_fractional_power(const InputSignal& u, const Interval& iv) {
  for (const Term& term : u.terms()) {
    const auto* bt = std::get_if<BasisTerm>(&term);
    if (!bt || !bt->weighted || !on_own_domain(bt->element, iv)) continue;
    const WeightFn w = family_weight(bt->element);
    if (w.p != std::floor(w.p) || w.q != std::floor(w.q)) return true;
  }
  return false;
}

TimeMap TimeMap::for_signals(const Interval& iv, std::span<const InputSignal* const> signals,
                             EndpointPower extra) {
  if (!(iv.hi > iv.lo)) throw ArgumentError("interval must satisfy lo < hi");
  bool substitute = extra.p < 0.0 || extra.q < 0.0;
  for (const InputSignal* u : signals) {
    const EndpointPower e = singular_power(*u, iv) + extra;
    if (e.p < -0.5 || e.q < -0.5) {
      throw CapabilityError("endpoint singularity stronger than (1 - t^2)^(-1/2) is not supported");
    }
    if (e.p < 0.0 || e.q < 0.0 || has_fractional_power(*u, iv)) substitute = true;
  }
  return TimeMap(iv, substitute);
}

Interval TimeMap::parameter_range() const { return substituted_ ? Interval{0.0, kPi} : iv_; }

SamplePoint TimeMap::point(double sigma) const {
  return substituted_ ? SamplePoint::from_angle(iv_, sigma) : SamplePoint::from_t(iv_, sigma);
}

double TimeMap::rate(const InputSignal& u, double sigma) const {
  const InputSignal* one[] = {&u};
  return product_rate(one, WeightFn{}, sigma);
}

double TimeMap::product_rate(std::span<const InputSignal* const> factors, const WeightFn& w,
                             double sigma) const {
  const SamplePoint pt = point(sigma);
  std::vector<Piece> acc{{1.0, w}};
  std::vector<Piece> pieces, next;
  for (const InputSignal* f : factors) {
    pieces.clear();
    collect_pieces(*f, iv_, pt, pieces);
    next.clear();
    for (const Piece& a : acc) {
      for (const Piece& b : pieces) next.push_back({a.value * b.value, a.power + b.power});
    }
    acc.swap(next);
  }
  const EndpointPower extra = substituted_ ? kAngleJacobian : EndpointPower{};
  double total = 0.0;
  for (const Piece& piece : acc) total += combine(piece, pt, extra);
  return substituted_ ? iv_.half() * total : total;
}

double integrate_product(std::span<const InputSignal* const> factors, const WeightFn& w,
                         const Interval& iv) {
  if (!(iv.hi > iv.lo)) throw ArgumentError("interval must satisfy lo < hi");
  EndpointPower combined = w;
  for (const InputSignal* f : factors) combined = combined + singular_power(*f, iv);
  if (combined.p <= -1.0 || combined.q <= -1.0) {
    throw IntegrabilityError("integrand is not integrable at an interval endpoint");
  }
  if (combined.p < -0.5 || combined.q < -0.5) {
    throw CapabilityError("endpoint singularity stronger than (1 - t^2)^(-1/2) is not supported");
  }
  bool substitute = combined.p < 0.0 || combined.q < 0.0;
  for (const InputSignal* f : factors) substitute = substitute || has_fractional_power(*f, iv);
  const TimeMap tm(iv, substitute);
  const Interval range = tm.parameter_range();
  return integrate([&](double sigma) { return tm.product_rate(factors, w, sigma); }, range.lo,
                   range.hi);
}

double inner_product(const InputSignal& f, const InputSignal& g, const WeightFn& w,
                     const Interval& iv) {
  const InputSignal* factors[] = {&f, &g};
  return integrate_product(factors, w, iv);
}

double inner_product(const BasisElement& f, const BasisElement& g, const WeightFn& w,
                     const Interval& iv) {
  return inner_product(InputSignal::basis(f), InputSignal::basis(g), w, iv);
}

double integral(const InputSignal& u, const Interval& iv) {
  const InputSignal* factors[] = {&u};
  return integrate_product(factors, WeightFn{}, iv);
}

double l1_norm(const InputSignal& u, const Interval& iv) { return lp_integral(u, iv, 1.0); }

double lp_integral(const InputSignal& u, const Interval& iv, double p) {
  if (!(p >= 1.0)) throw ArgumentError("exponent p must be >= 1");
  const InputSignal* one[] = {&u};
  const TimeMap tm = TimeMap::for_signals(iv, one);
  if (tm.substituted() && p != 1.0) {
    throw CapabilityError("L^p integrals of singular inputs are supported only for p = 1");
  }
  return scan_integral(tm, u, p);
}

}  // namespace orthosteer
