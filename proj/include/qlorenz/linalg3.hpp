#pragma once

// Fixed-size 3x3 real linear algebra: determinants, characteristic
// polynomials, closed-form cubic roots, and modified Gram-Schmidt.

#include <array>
#include <cmath>
#include <complex>

namespace qlorenz {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

  friend constexpr Vec3 operator+(const Vec3& a, const Vec3& b) {
    return {a.x + b.x, a.y + b.y, a.z + b.z};
  }
  friend constexpr Vec3 operator-(const Vec3& a, const Vec3& b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
  }
  friend constexpr Vec3 operator*(double c, const Vec3& v) { return {c * v.x, c * v.y, c * v.z}; }
  friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

/// Row-major 3x3 matrix.
class Mat3 {
 public:
  constexpr Mat3() = default;
  constexpr explicit Mat3(const std::array<double, 9>& row_major) : a_(row_major) {}

  static constexpr Mat3 identity() { return Mat3({1, 0, 0, 0, 1, 0, 0, 0, 1}); }
  static constexpr Mat3 diag(double a, double b, double c) {
    return Mat3({a, 0, 0, 0, b, 0, 0, 0, c});
  }

  constexpr double operator()(int r, int c) const { return a_[3 * r + c]; }
  constexpr double& operator()(int r, int c) { return a_[3 * r + c]; }

  constexpr double trace() const { return a_[0] + a_[4] + a_[8]; }
  constexpr Vec3 row(int r) const { return {a_[3 * r], a_[3 * r + 1], a_[3 * r + 2]}; }
  constexpr Vec3 operator*(const Vec3& v) const { return {dot(row(0), v), dot(row(1), v), dot(row(2), v)}; }

  const std::array<double, 9>& entries() const noexcept { return a_; }
  bool finite() const noexcept;

  friend constexpr bool operator==(const Mat3&, const Mat3&) = default;

 private:
  std::array<double, 9> a_{};
};

double det3(const Mat3& m);

/// Coefficients of det(lambda*I - m) = lambda^3 + c2*lambda^2 + c1*lambda + c0.
struct CharPoly {
  double c2 = 0.0;
  double c1 = 0.0;
  double c0 = 0.0;

  double operator()(double lambda) const { return ((lambda + c2) * lambda + c1) * lambda + c0; }
  std::complex<double> operator()(std::complex<double> lambda) const {
    return ((lambda + c2) * lambda + c1) * lambda + c0;
  }
};

CharPoly characteristic_coeffs(const Mat3& m);

/// Three eigenvalues (or cubic roots) sorted by descending real part, ties by
/// descending imaginary part. Non-real values come in exact conjugate pairs.
struct EigenTriple {
  std::array<std::complex<double>, 3> values;

  const std::complex<double>& operator[](int i) const { return values[static_cast<std::size_t>(i)]; }
  std::complex<double> sum() const { return values[0] + values[1] + values[2]; }
  std::complex<double> product() const { return values[0] * values[1] * values[2]; }
};

/// Relative size below which an imaginary part is snapped to zero.
inline constexpr double kRealSnap = 1e-9;

/// Roots of lambda^3 + c2*lambda^2 + c1*lambda + c0 by the depressed-cubic
/// closed form (trigonometric for three real roots, Cardano otherwise). The
/// dominant real root is Newton-polished and deflated; the remaining pair
/// comes from a cancellation-free quadratic.
EigenTriple cubic_roots(double c2, double c1, double c0);
inline EigenTriple cubic_roots(const CharPoly& p) { return cubic_roots(p.c2, p.c1, p.c0); }

EigenTriple eigenvalues3(const Mat3& m);

/// Three perturbation directions, stored as columns.
struct TangentFrame {
  std::array<Vec3, 3> columns;

  static constexpr TangentFrame identity() { return {{Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}}}; }
  bool finite() const noexcept;
  /// Determinant of the matrix whose columns are the frame vectors.
  double det() const;

  friend constexpr bool operator==(const TangentFrame&, const TangentFrame&) = default;
};

/// m applied to every column of f.
TangentFrame operator*(const Mat3& m, const TangentFrame& f);
TangentFrame operator+(const TangentFrame& a, const TangentFrame& b);
TangentFrame operator*(double c, const TangentFrame& f);

struct Orthonormalized {
  TangentFrame frame;
  /// Pre-normalization lengths, i.e. the diagonal of R in f = Q R.
  std::array<double, 3> norms;
};

/// Modified Gram-Schmidt. Throws DegenerateFrameError when a column loses all
/// significant digits against the preceding ones or its norm underflows.
Orthonormalized gram_schmidt3(const TangentFrame& f);

}  // namespace qlorenz
