#pragma once

// Fixed-step integrators for the flow: classical RK4, RK4 on the coupled
// variational system, and the geometric / bigeometric multiplicative RK4
// steppers.
//
// The multiplicative steppers are classical RK4 applied after the exact
// change of variables u = ln|coordinate| (geometric) and additionally
// s = ln t (bigeometric). Coordinate signs are frozen at the initial
// condition: a multiplicative update can never cross zero. When the true
// solution does cross zero the log variable diverges to -inf and the stepper
// reports a BlowUpError instead of continuing.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "qlorenz/error.hpp"
#include "qlorenz/linalg3.hpp"
#include "qlorenz/model.hpp"

namespace qlorenz {

/// Any coordinate magnitude above this aborts an integration run.
inline constexpr double kBlowUpThreshold = 1e12;

struct SimSettings {
  double t0 = 0.0;
  double t_end = 1000.0;
  /// Step in t; for bigeometric runs, the step in s = ln t.
  double h = 0.001;
  /// Leading time span omitted from the output.
  double discard = 100.0;
  std::int64_t sample_every = 1;

  /// Throws DomainError on the first violated constraint.
  void validate() const;
  /// Number of steps covering [t0, t_end]; t_end is snapped to a whole step.
  std::int64_t steps() const;
};

struct Sample {
  double t = 0.0;
  State3 state;

  friend bool operator==(const Sample&, const Sample&) = default;
};

struct Trajectory {
  SystemParams params;
  SimSettings settings;
  std::vector<Sample> samples;
};

enum class MulKind { Geometric, Bigeometric };

std::string to_string(MulKind kind);

State3 rk4_step(const SystemParams& p, const State3& s, double h);

/// Deterministic: identical inputs give bit-identical samples.
Trajectory integrate(const SystemParams& p, const State3& init, const SimSettings& cfg);

struct TangentState {
  State3 state;
  TangentFrame frame;
};

/// One RK4 step of the 12-dimensional system s' = F(s), V' = J(s) V. Tangent
/// stages use the Jacobian at the matching state stage.
TangentState variational_rk4_step(const SystemParams& p, const State3& s, const TangentFrame& f,
                                  double h);

namespace detail {

struct LogState {
  State3 sign;
  State3 u;
};

LogState to_log(const State3& s);
/// sign * exp(u); throws BlowUpError when a coordinate collapses to zero or overflows.
State3 from_log(const LogState& ls, const char* who);

inline State3 log_stage(const State3& u, const MulExponent3& e, double c) {
  return {u.x + c * e.ex, u.y + c * e.ey, u.z + c * e.ez};
}

}  // namespace detail

/// Geometric RK4 for an arbitrary exponent field `exponent(State3) -> MulExponent3`.
/// Equivalent to x_{n+1} = x_n * exp(h/6 (e1 + 2 e2 + 2 e3 + e4)) per coordinate.
template <class ExponentFn>
State3 geometric_rk4_step(ExponentFn&& exponent, const State3& s, double h) {
  using detail::log_stage;
  if (!(h > 0.0)) throw DomainError("geometric step requires h > 0");
  detail::LogState ls = detail::to_log(s);
  auto at = [&](const State3& u) { return exponent(detail::from_log({ls.sign, u}, "geometric stage")); };

  const MulExponent3 e1 = exponent(s);
  const MulExponent3 e2 = at(log_stage(ls.u, e1, h / 2));
  const MulExponent3 e3 = at(log_stage(ls.u, e2, h / 2));
  const MulExponent3 e4 = at(log_stage(ls.u, e3, h));
  const MulExponent3 avg{e1.ex + 2 * e2.ex + 2 * e3.ex + e4.ex, e1.ey + 2 * e2.ey + 2 * e3.ey + e4.ey,
                         e1.ez + 2 * e2.ez + 2 * e3.ez + e4.ez};
  ls.u = log_stage(ls.u, avg, h / 6);
  return detail::from_log(ls, "geometric step");
}

/// Signs preserved; throws DomainError if a coordinate of s is zero.
State3 geometric_rk4_step(const SystemParams& p, const State3& s, double h);

struct TimedState {
  double t = 0.0;
  State3 state;
};

/// Bigeometric RK4 for an arbitrary exponent field `exponent(t, State3)`:
/// classical RK4 in (ln t, ln|x|) with step h_s in ln t.
template <class ExponentFn>
TimedState bigeometric_rk4_step(ExponentFn&& exponent, double t, const State3& s, double h_s) {
  using detail::log_stage;
  if (!(t > 0.0)) throw DomainError("bigeometric step requires t > 0");
  if (!(h_s > 0.0)) throw DomainError("bigeometric step requires h_s > 0");
  const double log_t = std::log(t);
  detail::LogState ls = detail::to_log(s);
  auto at = [&](double ds, const State3& u) {
    return exponent(std::exp(log_t + ds), detail::from_log({ls.sign, u}, "bigeometric stage"));
  };

  const MulExponent3 e1 = exponent(t, s);
  const MulExponent3 e2 = at(h_s / 2, log_stage(ls.u, e1, h_s / 2));
  const MulExponent3 e3 = at(h_s / 2, log_stage(ls.u, e2, h_s / 2));
  const MulExponent3 e4 = at(h_s, log_stage(ls.u, e3, h_s));
  const MulExponent3 avg{e1.ex + 2 * e2.ex + 2 * e3.ex + e4.ex, e1.ey + 2 * e2.ey + 2 * e3.ey + e4.ey,
                         e1.ez + 2 * e2.ez + 2 * e3.ez + e4.ez};
  ls.u = log_stage(ls.u, avg, h_s / 6);
  return {std::exp(log_t + h_s), detail::from_log(ls, "bigeometric step")};
}

TimedState bigeometric_rk4_step(const SystemParams& p, double t, const State3& s, double h_s);

/// Loops the geometric or bigeometric stepper with the sampling rules of
/// integrate(). For Bigeometric, cfg.h is the step in ln t, t0 must be > 0, and
/// sample times are t0 * exp(n h).
Trajectory integrate_multiplicative(MulKind kind, const SystemParams& p, const State3& init,
                                    const SimSettings& cfg);

}  // namespace qlorenz
