#pragma once

// Test-only oracles and helpers. Nothing here calls into the integrators: the
// reference RK4 below works on plain arrays so it can check the library.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

#include "qlorenz/integrators.hpp"

namespace qlorenz::testing {

using Arr3 = std::array<double, 3>;

inline Arr3 field(const Arr3& v, double sigma, double rho, double beta) {
  const double xy = v[0] * v[1];
  return {sigma * (v[1] * v[2] - v[0]), rho * v[0] - v[0] * v[2], xy * xy - beta * v[2]};
}

/// Classical RK4 on a generic right-hand side of Arr3.
template <class F>
Arr3 reference_rk4(F&& f, const Arr3& v, double h) {
  auto axpy = [](const Arr3& a, double c, const Arr3& b) {
    return Arr3{a[0] + c * b[0], a[1] + c * b[1], a[2] + c * b[2]};
  };
  const Arr3 k1 = f(v);
  const Arr3 k2 = f(axpy(v, h / 2, k1));
  const Arr3 k3 = f(axpy(v, h / 2, k2));
  const Arr3 k4 = f(axpy(v, h, k3));
  Arr3 out;
  for (int i = 0; i < 3; ++i) out[i] = v[i] + h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
  return out;
}

inline double max_abs_diff(const State3& a, const State3& b) {
  return std::max({std::abs(a.x - b.x), std::abs(a.y - b.y), std::abs(a.z - b.z)});
}

/// Largest normalized autocorrelation of a uniformly sampled series over lags
/// in [min_lag, max_lag] sample counts.
inline double max_autocorrelation(const std::vector<double>& xs, std::size_t min_lag, std::size_t max_lag) {
  const std::size_t n = xs.size();
  double mean = 0.0;
  for (double v : xs) mean += v;
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (double v : xs) var += (v - mean) * (v - mean);
  var /= static_cast<double>(n);
  double best = -1.0;
  for (std::size_t k = min_lag; k <= max_lag && k < n; ++k) {
    double c = 0.0;
    for (std::size_t i = 0; i + k < n; ++i) c += (xs[i] - mean) * (xs[i + k] - mean);
    c /= static_cast<double>(n - k);
    best = std::max(best, c / var);
  }
  return best;
}

/// x(t) resampled on a uniform grid of spacing dt by linear interpolation.
inline std::vector<double> resample_x(const std::vector<Sample>& samples, double dt) {
  std::vector<double> out;
  std::size_t j = 0;
  for (double t = samples.front().t; t <= samples.back().t; t += dt) {
    while (j + 1 < samples.size() && samples[j + 1].t < t) ++j;
    if (j + 1 == samples.size()) break;
    const auto& a = samples[j];
    const auto& b = samples[j + 1];
    const double w = (t - a.t) / (b.t - a.t);
    out.push_back(a.state.x + w * (b.state.x - a.state.x));
  }
  return out;
}

/// Non-periodicity criterion: no lag in [1, max_lag_time] time units has
/// normalized autocorrelation of x above 0.99. Samples must be uniform in t.
inline double max_autocorrelation_in_time(const std::vector<Sample>& samples, double max_lag_time,
                                          double dt = 0.01) {
  const std::vector<double> xs = resample_x(samples, dt);
  return max_autocorrelation(xs, static_cast<std::size_t>(std::llround(1.0 / dt)),
                             static_cast<std::size_t>(std::llround(max_lag_time / dt)));
}

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240611);
  return gen;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

}  // namespace qlorenz::testing
