#pragma once

#include <cmath>

namespace qlorenz {

/// Time derivative of a phase-space point (units 1/time).
struct Deriv3 {
  double dx = 0.0;
  double dy = 0.0;
  double dz = 0.0;

  friend constexpr Deriv3 operator+(const Deriv3& a, const Deriv3& b) {
    return {a.dx + b.dx, a.dy + b.dy, a.dz + b.dz};
  }
  friend constexpr Deriv3 operator*(double c, const Deriv3& d) {
    return {c * d.dx, c * d.dy, c * d.dz};
  }
  friend constexpr bool operator==(const Deriv3&, const Deriv3&) = default;
};

/// A point (x, y, z) in phase space.
struct State3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  /// Displacement by a derivative scaled with a time step.
  friend constexpr State3 operator+(const State3& s, const Deriv3& d) {
    return {s.x + d.dx, s.y + d.dy, s.z + d.dz};
  }
  friend constexpr bool operator==(const State3&, const State3&) = default;

  bool finite() const noexcept {
    return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
  }
};

inline double norm(const Deriv3& d) { return std::sqrt(d.dx * d.dx + d.dy * d.dy + d.dz * d.dz); }

}  // namespace qlorenz
