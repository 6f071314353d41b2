#include "qlorenz/linalg3.hpp"

#include <algorithm>
#include <limits>
#include <numbers>

#include "qlorenz/error.hpp"

namespace qlorenz {

bool Mat3::finite() const noexcept {
  return std::all_of(a_.begin(), a_.end(), [](double v) { return std::isfinite(v); });
}

double det3(const Mat3& m) {
  return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
         m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
         m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

CharPoly characteristic_coeffs(const Mat3& m) {
  const double minors = (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)) +
                        (m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0)) +
                        (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1));
  return {-m.trace(), minors, -det3(m)};
}

namespace {

using cplx = std::complex<double>;

// One real root of the monic cubic: the largest in magnitude when all three
// are real, the only one otherwise.
double dominant_real_root(double c2, double c1, double c0) {
  if (c0 == 0.0) return 0.0;

  const double shift = c2 / 3.0;
  const double p = c1 - c2 * shift;
  const double q = (2.0 * c2 * c2 * c2) / 27.0 - c2 * c1 / 3.0 + c0;
  const double disc = (q / 2.0) * (q / 2.0) + (p / 3.0) * (p / 3.0) * (p / 3.0);

  if (disc > 0.0) {
    const double u = std::cbrt(-q / 2.0 - std::copysign(std::sqrt(disc), q));
    const double t = (u == 0.0) ? 0.0 : u - p / (3.0 * u);
    return t - shift;
  }
  if (p == 0.0) return -shift;

  const double m = 2.0 * std::sqrt(-p / 3.0);
  const double arg = std::clamp((3.0 * q) / (p * m), -1.0, 1.0);
  const double phi = std::acos(arg) / 3.0;
  double best = 0.0;
  for (int k = 0; k < 3; ++k) {
    const double r = m * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0) - shift;
    if (k == 0 || std::abs(r) > std::abs(best)) best = r;
  }
  return best;
}

double polish(double r, double c2, double c1, double c0) {
  const CharPoly poly{c2, c1, c0};
  double fr = std::abs(poly(r));
  for (int it = 0; it < 4 && fr > 0.0; ++it) {
    const double slope = (3.0 * r + 2.0 * c2) * r + c1;
    if (slope == 0.0) break;
    const double next = r - poly(r) / slope;
    const double fn = std::abs(poly(next));
    if (!(fn < fr)) break;
    r = next;
    fr = fn;
  }
  return r;
}

// Roots of lambda^2 + b*lambda + c.
std::array<cplx, 2> quadratic_roots(double b, double c) {
  const double disc = b * b - 4.0 * c;
  if (disc >= 0.0) {
    const double s = std::sqrt(disc);
    const double q = -0.5 * (b + std::copysign(s, b));
    if (q == 0.0) return {cplx{0.0}, cplx{0.0}};
    return {cplx{q}, cplx{c / q}};
  }
  const double re = -0.5 * b;
  const double im = 0.5 * std::sqrt(-disc);
  return {cplx{re, im}, cplx{re, -im}};
}

void sort_descending(EigenTriple& e) {
  std::sort(e.values.begin(), e.values.end(), [](const cplx& a, const cplx& b) {
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
  });
}

}  // namespace

EigenTriple cubic_roots(double c2, double c1, double c0) {
  const double r = polish(dominant_real_root(c2, c1, c0), c2, c1, c0);
  const double b = c2 + r;
  const double c = (r != 0.0) ? -c0 / r : c1;
  auto pair = quadratic_roots(b, c);

  EigenTriple out{{cplx{r}, pair[0], pair[1]}};
  for (auto& v : out.values) {
    if (std::abs(v.imag()) < kRealSnap * (1.0 + std::abs(v.real()))) v = cplx{v.real(), 0.0};
  }
  sort_descending(out);
  return out;
}

EigenTriple eigenvalues3(const Mat3& m) { return cubic_roots(characteristic_coeffs(m)); }

bool TangentFrame::finite() const noexcept {
  return std::all_of(columns.begin(), columns.end(), [](const Vec3& v) {
    return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
  });
}

double TangentFrame::det() const {
  const auto& [a, b, c] = columns;
  return det3(Mat3({a.x, b.x, c.x, a.y, b.y, c.y, a.z, b.z, c.z}));
}

TangentFrame operator*(const Mat3& m, const TangentFrame& f) {
  return {{m * f.columns[0], m * f.columns[1], m * f.columns[2]}};
}

TangentFrame operator+(const TangentFrame& a, const TangentFrame& b) {
  return {{a.columns[0] + b.columns[0], a.columns[1] + b.columns[1], a.columns[2] + b.columns[2]}};
}

TangentFrame operator*(double c, const TangentFrame& f) {
  return {{c * f.columns[0], c * f.columns[1], c * f.columns[2]}};
}

Orthonormalized gram_schmidt3(const TangentFrame& f) {
  constexpr double kUnderflow = 1e-300;
  constexpr double kLostDigits = 64.0 * std::numeric_limits<double>::epsilon();

  Orthonormalized out{};
  for (std::size_t j = 0; j < 3; ++j) {
    Vec3 v = f.columns[j];
    const double original = norm(v);
    // Two modified Gram-Schmidt sweeps keep the frame orthogonal to rounding
    // even when the columns are nearly aligned.
    for (int sweep = 0; sweep < 2; ++sweep) {
      for (std::size_t k = 0; k < j; ++k) v = v - dot(out.frame.columns[k], v) * out.frame.columns[k];
      if (sweep == 0 && !(norm(v) > kUnderflow && norm(v) > kLostDigits * original)) {
        throw DegenerateFrameError("gram_schmidt3: column " + std::to_string(j) +
                                   " is linearly dependent on the preceding columns");
      }
    }
    const double n = norm(v);
    out.frame.columns[j] = (1.0 / n) * v;
    out.norms[j] = n;
  }
  return out;
}

}  // namespace qlorenz
