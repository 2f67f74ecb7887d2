#pragma once

#include <cstdint>
#include <random>

#include "orthosteer/so3.hpp"

namespace testing_support {

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& g, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}

/// Haar-distributed rotation from a normalized random quaternion.
inline orthosteer::so3::Mat3 random_rotation(std::mt19937_64& g) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::Quaterniond q(n(g), n(g), n(g), n(g));
  q.normalize();
  return q.toRotationMatrix();
}

inline orthosteer::so3::Vec3 random_vector(std::mt19937_64& g, double scale) {
  return {uniform(g, -scale, scale), uniform(g, -scale, scale), uniform(g, -scale, scale)};
}

}  // namespace testing_support
