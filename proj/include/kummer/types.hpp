#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>

namespace kummer {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat2 = Eigen::Matrix2d;
using ArrayXd = Eigen::ArrayXd;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

// Sup norm of an array.
inline double sup_norm(const ArrayXd& a) { return a.abs().maxCoeff(); }

}  // namespace kummer
