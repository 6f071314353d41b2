#pragma once

// The modified quadratic Lorenz flow
//
//   x' = sigma (y z - x)
//   y' = rho x - x z
//   z' = (x y)^2 - beta z
//
// together with its Jacobian, divergence, the (x, y, z) -> (-x, -y, z)
// symmetry, and the exponent fields of its geometric and bigeometric
// multiplicative forms.

#include "qlorenz/linalg3.hpp"
#include "qlorenz/state.hpp"

namespace qlorenz {

/// (sigma, rho, beta), all strictly positive and finite. Validated once here so
/// that the field evaluations in integrator loops do not re-check.
class SystemParams {
 public:
  /// Chaotic regime reported for the system: sigma = 12, rho = 8, beta = 4.
  SystemParams() : SystemParams(12.0, 8.0, 4.0) {}
  SystemParams(double sigma, double rho, double beta);

  double sigma() const noexcept { return sigma_; }
  double rho() const noexcept { return rho_; }
  double beta() const noexcept { return beta_; }

  SystemParams with_beta(double beta) const { return {sigma_, rho_, beta}; }

  friend bool operator==(const SystemParams&, const SystemParams&) = default;

 private:
  double sigma_;
  double rho_;
  double beta_;
};

/// Logarithm of a multiplicative derivative, per coordinate.
struct MulExponent3 {
  double ex = 0.0;
  double ey = 0.0;
  double ez = 0.0;

  friend constexpr bool operator==(const MulExponent3&, const MulExponent3&) = default;
};

/// Throws BlowUpError naming the offending component if the result is not finite.
Deriv3 vector_field(const State3& s, const SystemParams& p);

Mat3 jacobian(const State3& s, const SystemParams& p);

/// -(sigma + beta); the flow contracts volumes at this constant rate.
inline double divergence(const SystemParams& p) { return -(p.sigma() + p.beta()); }

constexpr State3 apply_symmetry(const State3& s) { return {-s.x, -s.y, s.z}; }

/// (x'/x, y'/y, z'/z). The geometric field value is the componentwise exp.
/// Throws DomainError when a coordinate is zero.
MulExponent3 geometric_exponent(const State3& s, const SystemParams& p);

/// t * geometric_exponent(s, p). Requires t > 0.
MulExponent3 bigeometric_exponent(double t, const State3& s, const SystemParams& p);

}  // namespace qlorenz
