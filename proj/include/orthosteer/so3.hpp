#pragma once

// Rotation-group utilities. Convention: hat(u) w = u x w, so hat(e1), hat(e2),
// hat(e3) form the basis E1, E2, E3 with [E1, E2] = E3.

#include <Eigen/Dense>

namespace orthosteer::so3 {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

Mat3 hat(const Vec3& v);

/// Inverse of hat. Throws ArgumentError unless m is skew-symmetric to 1e-12.
Vec3 vee(const Mat3& m);

/// Rodrigues' formula.
Mat3 exp(const Vec3& w);

/// Principal logarithm as an axis-angle vector with angle in [0, pi].
/// At angle pi the axis sign is ambiguous: throws DomainError unless
/// `tie_break` is set, in which case the first nonzero axis component is
/// made positive.
Vec3 log(const Mat3& r, bool tie_break = false);

/// Rotation angle in [0, pi].
double angle(const Mat3& r);

/// max(|g^T g - I|_F, |det g - 1|) .
double rotation_defect(const Mat3& g);

/// Nearest rotation in the Frobenius norm (polar factor via SVD).
Mat3 project(const Mat3& g);

/// Rotation by `radians` about the third axis.
Mat3 rot_z(double radians);

}  // namespace orthosteer::so3
