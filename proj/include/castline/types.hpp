#pragma once

#include <Eigen/Core>
#include <cmath>

namespace castline {

using Scalar = double;

template <typename T>
using Vec2T = Eigen::Matrix<T, 2, 1>;
template <typename T>
using VecXT = Eigen::Matrix<T, Eigen::Dynamic, 1>;
template <typename T>
using MatXT = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <typename T>
using Mat2XT = Eigen::Matrix<T, 2, Eigen::Dynamic>;

using Vec2 = Vec2T<Scalar>;
using VecX = VecXT<Scalar>;
using MatX = MatXT<Scalar>;
using Mat2X = Mat2XT<Scalar>;

/// 2D point in the plane, robot base at the origin.
using CartesianPoint = Vec2;

inline constexpr Scalar kPi = 3.14159265358979323846;

template <typename T>
constexpr T deg2rad(T deg) {
  return deg * static_cast<T>(kPi) / static_cast<T>(180);
}

template <typename T>
constexpr T rad2deg(T rad) {
  return rad * static_cast<T>(180) / static_cast<T>(kPi);
}

/// Polar coordinate (r, theta) with theta measured from the workspace
/// symmetry axis. r >= 0, theta in [-pi, pi].
struct PolarPoint {
  Scalar r = 0;
  Scalar theta = 0;

  Vec2 to_cartesian() const { return {r * std::cos(theta), r * std::sin(theta)}; }

  static PolarPoint from_cartesian(const Vec2& p) {
    return {p.norm(), std::atan2(p.y(), p.x())};
  }
};

}  // namespace castline
