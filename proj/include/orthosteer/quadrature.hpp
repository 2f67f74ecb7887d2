#pragma once

// Composite Gauss-Legendre quadrature with adaptive panel splitting.

#include <array>
#include <cmath>
#include <utility>

#include "orthosteer/errors.hpp"

namespace orthosteer {

struct QuadratureOptions {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_depth = 30;
};

inline constexpr int kGaussPoints = 10;

/// Nodes and weights of the kGaussPoints-point rule on [-1, 1].
const std::array<std::pair<double, double>, kGaussPoints>& gauss_legendre_rule();

template <class F>
double gauss_panel(F& f, double a, double b) {
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double acc = 0.0;
  for (const auto& [x, w] : gauss_legendre_rule()) acc += w * f(mid + half * x);
  return half * acc;
}

namespace detail {

template <class F>
double adaptive(F& f, double a, double b, double whole, double tol, int depth,
                const QuadratureOptions& opt) {
  const double m = 0.5 * (a + b);
  const double left = gauss_panel(f, a, m);
  const double right = gauss_panel(f, m, b);
  const double refined = left + right;
  if (depth >= opt.max_depth || std::fabs(refined - whole) <= tol) {
    return refined;
  }
  return adaptive(f, a, m, left, 0.5 * tol, depth + 1, opt) +
         adaptive(f, m, b, right, 0.5 * tol, depth + 1, opt);
}

}  // namespace detail

/// Integral of f over [a, b]. A panel is accepted once splitting it changes
/// its estimate by less than its share of the tolerance.
template <class F>
double integrate(F&& f, double a, double b, const QuadratureOptions& opt = {}) {
  if (a == b) return 0.0;
  const double coarse = gauss_panel(f, a, b);
  const double tol = std::fmax(opt.abs_tol, opt.rel_tol * std::fabs(coarse));
  const double v = detail::adaptive(f, a, b, coarse, tol, 0, opt);
  if (!std::isfinite(v)) throw IntegrabilityError("quadrature produced a non-finite value");
  return v;
}

}  // namespace orthosteer
