#pragma once

#include <cmath>
#include <complex>
#include <string>

#include "bellsim/errors.hpp"

namespace bellsim::math {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Tolerance on squared-norm deviation accepted by the unit-vector and
/// spinor constructors.
inline constexpr double kUnitTol = 1e-12;

// Degree/radian conversion uses one shared constant so that
// to_degrees(to_radians(d)) == d for CLI-boundary values.
inline constexpr double kDegToRad = kPi / 180.0;

inline double to_radians(double degrees) { return degrees * kDegToRad; }
inline double to_degrees(double radians) { return radians / kDegToRad; }

/// Real 3-vector of unit length: analyzer axes, hidden directions, Bloch
/// vectors. Construct through the factories, which enforce |v| = 1.
struct UnitVector3 {
  double x{0.0};
  double y{0.0};
  double z{1.0};

  /// Validating constructor: |x² + y² + z² − 1| must be within kUnitTol.
  static UnitVector3 of(double x, double y, double z) {
    const double n2 = x * x + y * y + z * z;
    if (std::abs(n2 - 1.0) > kUnitTol) {
      throw validation_error("UnitVector3: components are not unit length (|v|^2 = " +
                             std::to_string(n2) + ")");
    }
    return UnitVector3{x, y, z};
  }

  /// Rescale arbitrary components to unit length.
  static UnitVector3 normalized(double x, double y, double z) {
    const double n = std::sqrt(x * x + y * y + z * z);
    if (!(n > 0.0) || !std::isfinite(n)) {
      throw validation_error("UnitVector3: cannot normalize a zero or non-finite vector");
    }
    return UnitVector3{x / n, y / n, z / n};
  }

  /// Axis in the x-y plane at the given angle from x̂.
  static UnitVector3 planar(double angle_rad) {
    return UnitVector3{std::cos(angle_rad), std::sin(angle_rad), 0.0};
  }

  static UnitVector3 x_axis() { return UnitVector3{1.0, 0.0, 0.0}; }
  static UnitVector3 y_axis() { return UnitVector3{0.0, 1.0, 0.0}; }
  static UnitVector3 z_axis() { return UnitVector3{0.0, 0.0, 1.0}; }

  UnitVector3 operator-() const { return UnitVector3{-x, -y, -z}; }
};

inline double dot(const UnitVector3& u, const UnitVector3& v) {
  return u.x * v.x + u.y * v.y + u.z * v.z;
}

inline double norm_sq(const UnitVector3& v) { return dot(v, v); }

}  // namespace bellsim::math
