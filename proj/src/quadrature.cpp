#include "orthosteer/quadrature.hpp"

#include <cmath>
#include <numbers>

namespace orthosteer {

namespace {

std::array<std::pair<double, double>, kGaussPoints> build_rule() {
  std::array<std::pair<double, double>, kGaussPoints> rule{};
  constexpr int n = kGaussPoints;
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 1; k < n; ++k) {
        const double p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-16) break;
    }
    rule[i] = {x, 2.0 / ((1.0 - x * x) * dp * dp)};
  }
  return rule;
}

}  // namespace

const std::array<std::pair<double, double>, kGaussPoints>& gauss_legendre_rule() {
  static const auto rule = build_rule();
  return rule;
}

}  // namespace orthosteer
