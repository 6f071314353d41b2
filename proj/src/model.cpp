#include "qlorenz/model.hpp"

#include <cmath>
#include <string>

#include "qlorenz/error.hpp"

namespace qlorenz {

namespace {

void require_positive(const char* name, double v) {
  if (!(std::isfinite(v) && v > 0.0)) {
    throw DomainError(std::string("parameter ") + name + " must be finite and > 0, got " +
                      std::to_string(v));
  }
}

void require_nonzero(const State3& s) {
  const char* bad = s.x == 0.0 ? "x" : s.y == 0.0 ? "y" : s.z == 0.0 ? "z" : nullptr;
  if (bad) {
    throw DomainError(std::string("multiplicative field undefined: coordinate ") + bad + " is zero");
  }
}

}  // namespace

SystemParams::SystemParams(double sigma, double rho, double beta)
    : sigma_(sigma), rho_(rho), beta_(beta) {
  require_positive("sigma", sigma);
  require_positive("rho", rho);
  require_positive("beta", beta);
}

Deriv3 vector_field(const State3& s, const SystemParams& p) {
  const double xy = s.x * s.y;
  const Deriv3 d{p.sigma() * (s.y * s.z - s.x), p.rho() * s.x - s.x * s.z, xy * xy - p.beta() * s.z};
  if (!std::isfinite(d.dx)) throw BlowUpError("vector field overflow in dx", s);
  if (!std::isfinite(d.dy)) throw BlowUpError("vector field overflow in dy", s);
  if (!std::isfinite(d.dz)) throw BlowUpError("vector field overflow in dz", s);
  return d;
}

Mat3 jacobian(const State3& s, const SystemParams& p) {
  const double sg = p.sigma();
  return Mat3({-sg, sg * s.z, sg * s.y,
               p.rho() - s.z, 0.0, -s.x,
               2.0 * s.x * s.y * s.y, 2.0 * s.x * s.x * s.y, -p.beta()});
}

MulExponent3 geometric_exponent(const State3& s, const SystemParams& p) {
  require_nonzero(s);
  const Deriv3 d = vector_field(s, p);
  return {d.dx / s.x, d.dy / s.y, d.dz / s.z};
}

MulExponent3 bigeometric_exponent(double t, const State3& s, const SystemParams& p) {
  if (!(t > 0.0)) throw DomainError("bigeometric field requires t > 0, got " + std::to_string(t));
  const MulExponent3 g = geometric_exponent(s, p);
  return {t * g.ex, t * g.ey, t * g.ez};
}

}  // namespace qlorenz
