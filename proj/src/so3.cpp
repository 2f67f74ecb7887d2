#include "orthosteer/so3.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "orthosteer/errors.hpp"

namespace orthosteer::so3 {

namespace {
constexpr double kPi = std::numbers::pi;
}

Mat3 hat(const Vec3& v) {
  Mat3 m;
  m << 0.0, -v.z(), v.y(),
       v.z(), 0.0, -v.x(),
       -v.y(), v.x(), 0.0;
  return m;
}

Vec3 vee(const Mat3& m) {
  if ((m + m.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw ArgumentError("vee: matrix is not skew-symmetric");
  }
  return {m(2, 1), m(0, 2), m(1, 0)};
}

Mat3 exp(const Vec3& w) {
  const double th = w.norm();
  const Mat3 k = hat(w);
  double a, b;
  if (th < 1e-6) {
    const double th2 = th * th;
    a = 1.0 - th2 / 6.0 + th2 * th2 / 120.0;
    b = 0.5 - th2 / 24.0 + th2 * th2 / 720.0;
  } else {
    a = std::sin(th) / th;
    b = (1.0 - std::cos(th)) / (th * th);
  }
  return Mat3::Identity() + a * k + b * k * k;
}

double angle(const Mat3& r) {
  const Vec3 s{r(2, 1) - r(1, 2), r(0, 2) - r(2, 0), r(1, 0) - r(0, 1)};
  return std::atan2(0.5 * s.norm(), 0.5 * (r.trace() - 1.0));
}

Vec3 log(const Mat3& r, bool tie_break) {
  const Vec3 s{r(2, 1) - r(1, 2), r(0, 2) - r(2, 0), r(1, 0) - r(0, 1)};
  const double sin_th = 0.5 * s.norm();
  const double cos_th = 0.5 * (r.trace() - 1.0);
  const double th = std::atan2(sin_th, cos_th);
  if (th < 1e-6) {
    // sin(th)/th -> 1 - th^2/6
    return 0.5 * s * (1.0 + th * th / 6.0);
  }
  if (kPi - th > 1e-3) return 0.5 * s * (th / std::sin(th));

  // Near pi: axis from the symmetric part B = (R + R^T)/2 = cos I + (1 - cos) a a^T.
  const Mat3 b = 0.5 * (r + r.transpose());
  const Mat3 aat = (b - cos_th * Mat3::Identity()) / (1.0 - cos_th);
  int k = 0;
  aat.diagonal().maxCoeff(&k);
  Vec3 axis = aat.col(k) / std::sqrt(std::max(aat(k, k), 0.0));
  axis.normalize();
  const bool exact_pi = sin_th < 1e-12;
  if (exact_pi) {
    if (!tie_break) {
      throw DomainError("rotation angle is pi: axis sign is ambiguous (enable the tie-break)");
    }
    for (int i = 0; i < 3; ++i) {
      if (std::fabs(axis(i)) > 1e-12) {
        if (axis(i) < 0.0) axis = -axis;
        break;
      }
    }
  } else if (axis.dot(s) < 0.0) {
    axis = -axis;
  }
  return th * axis;
}

double rotation_defect(const Mat3& g) {
  return std::max((g.transpose() * g - Mat3::Identity()).norm(), std::fabs(g.determinant() - 1.0));
}

Mat3 project(const Mat3& g) {
  Eigen::JacobiSVD<Mat3> svd(g, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat3 u = svd.matrixU();
  const Mat3 v = svd.matrixV();
  if ((u * v.transpose()).determinant() < 0.0) u.col(2) = -u.col(2);
  return u * v.transpose();
}

Mat3 rot_z(double radians) { return exp(Vec3{0.0, 0.0, radians}); }

}  // namespace orthosteer::so3
