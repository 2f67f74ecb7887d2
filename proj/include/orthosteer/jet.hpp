#pragma once

// Truncated Taylor arithmetic. A Jet carries f(t0), f'(t0), ... up to order N
// as normalized coefficients c_k = f^(k)(t0) / k!, so products are plain
// convolutions. Used wherever the library needs exact (non finite-difference)
// first and second derivatives of compound expressions.

#include <array>
#include <cmath>
#include <cstddef>

namespace orthosteer {

template <std::size_t N>
class Taylor {
 public:
  static constexpr std::size_t order = N;

  constexpr Taylor() : c_{} {}
  constexpr Taylor(double value) : c_{} { c_[0] = value; }  // NOLINT: implicit from scalar

  static constexpr Taylor variable(double at) {
    Taylor r(at);
    if constexpr (N >= 1) r.c_[1] = 1.0;
    return r;
  }

  constexpr double value() const { return c_[0]; }
  constexpr double coeff(std::size_t k) const { return c_[k]; }
  constexpr double& coeff(std::size_t k) { return c_[k]; }

  /// k-th derivative with respect to the seed variable.
  constexpr double derivative(std::size_t k) const {
    double f = 1.0;
    for (std::size_t i = 2; i <= k; ++i) f *= static_cast<double>(i);
    return c_[k] * f;
  }

  /// Jet of f'. The highest-order coefficient is lost (set to zero).
  constexpr Taylor differentiated() const {
    Taylor r;
    for (std::size_t k = 0; k < N; ++k) r.c_[k] = static_cast<double>(k + 1) * c_[k + 1];
    return r;
  }

  Taylor& operator+=(const Taylor& o) {
    for (std::size_t k = 0; k <= N; ++k) c_[k] += o.c_[k];
    return *this;
  }
  Taylor& operator-=(const Taylor& o) {
    for (std::size_t k = 0; k <= N; ++k) c_[k] -= o.c_[k];
    return *this;
  }
  Taylor& operator*=(double s) {
    for (auto& x : c_) x *= s;
    return *this;
  }
  Taylor& operator*=(const Taylor& o) { return *this = *this * o; }
  Taylor& operator/=(const Taylor& o) { return *this = *this / o; }

  friend Taylor operator+(Taylor a, const Taylor& b) { return a += b; }
  friend Taylor operator-(Taylor a, const Taylor& b) { return a -= b; }
  friend Taylor operator-(Taylor a) { return a *= -1.0; }
  friend Taylor operator*(Taylor a, double s) { return a *= s; }
  friend Taylor operator*(double s, Taylor a) { return a *= s; }

  friend Taylor operator*(const Taylor& a, const Taylor& b) {
    Taylor r;
    for (std::size_t k = 0; k <= N; ++k) {
      double acc = 0.0;
      for (std::size_t j = 0; j <= k; ++j) acc += a.c_[j] * b.c_[k - j];
      r.c_[k] = acc;
    }
    return r;
  }

  friend Taylor operator/(const Taylor& a, const Taylor& b) {
    Taylor q;
    for (std::size_t k = 0; k <= N; ++k) {
      double acc = a.c_[k];
      for (std::size_t j = 1; j <= k; ++j) acc -= b.c_[j] * q.c_[k - j];
      q.c_[k] = acc / b.c_[0];
    }
    return q;
  }
  friend Taylor operator/(const Taylor& a, double s) { return a * (1.0 / s); }
  friend Taylor operator/(double s, const Taylor& b) { return Taylor(s) / b; }

  /// a^r for a.value() > 0 (or integer-free r with a.value() != 0).
  friend Taylor pow(const Taylor& a, double r) {
    Taylor p;
    p.c_[0] = std::pow(a.c_[0], r);
    for (std::size_t k = 1; k <= N; ++k) {
      double acc = 0.0;
      for (std::size_t j = 1; j <= k; ++j) {
        acc += ((r + 1.0) * static_cast<double>(j) - static_cast<double>(k)) * a.c_[j] *
               p.c_[k - j];
      }
      p.c_[k] = acc / (static_cast<double>(k) * a.c_[0]);
    }
    return p;
  }

  friend Taylor sqrt(const Taylor& a) { return pow(a, 0.5); }

  friend Taylor exp(const Taylor& a) {
    Taylor e;
    e.c_[0] = std::exp(a.c_[0]);
    for (std::size_t k = 1; k <= N; ++k) {
      double acc = 0.0;
      for (std::size_t j = 1; j <= k; ++j) acc += static_cast<double>(j) * a.c_[j] * e.c_[k - j];
      e.c_[k] = acc / static_cast<double>(k);
    }
    return e;
  }

  friend Taylor log(const Taylor& a) {
    Taylor l;
    l.c_[0] = std::log(a.c_[0]);
    for (std::size_t k = 1; k <= N; ++k) {
      double acc = a.c_[k];
      for (std::size_t j = 1; j < k; ++j) {
        acc -= static_cast<double>(j) / static_cast<double>(k) * l.c_[j] * a.c_[k - j];
      }
      l.c_[k] = acc / a.c_[0];
    }
    return l;
  }

  friend Taylor sin(const Taylor& a) { return sincos(a)[0]; }
  friend Taylor cos(const Taylor& a) { return sincos(a)[1]; }

  friend std::array<Taylor, 2> sincos(const Taylor& a) {
    Taylor s, c;
    s.c_[0] = std::sin(a.c_[0]);
    c.c_[0] = std::cos(a.c_[0]);
    for (std::size_t k = 1; k <= N; ++k) {
      double sa = 0.0, ca = 0.0;
      for (std::size_t j = 1; j <= k; ++j) {
        const double w = static_cast<double>(j) * a.c_[j];
        sa += w * c.c_[k - j];
        ca -= w * s.c_[k - j];
      }
      s.c_[k] = sa / static_cast<double>(k);
      c.c_[k] = ca / static_cast<double>(k);
    }
    return {s, c};
  }

 private:
  std::array<double, N + 1> c_;
};

/// Third order is enough for every residual in the library (the Jacobi
/// pairing check differentiates k1 three times).
using Jet = Taylor<3>;

}  // namespace orthosteer
