#include "qlorenz/integrators.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace qlorenz {

namespace {

std::string fmt_state(const State3& s) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << s.x << ", " << s.y << ", " << s.z << ")";
  return os.str();
}

bool exceeds_threshold(const State3& s) {
  return !s.finite() || std::abs(s.x) > kBlowUpThreshold || std::abs(s.y) > kBlowUpThreshold ||
         std::abs(s.z) > kBlowUpThreshold;
}

void check_init(const State3& init) {
  if (!init.finite()) throw DomainError("initial state must be finite");
}

// Index of the first step whose time is at or beyond t0 + discard.
std::int64_t first_kept_step(const SimSettings& cfg) {
  return static_cast<std::int64_t>(std::ceil(cfg.discard / cfg.h - 1e-9));
}

// Shared stepping loop. `advance(n, state)` produces the state at step n from
// the state at step n - 1; `time_of(n)` gives the sample time of step n.
template <class Advance, class TimeOf, class Keep>
Trajectory run(const SystemParams& p, const State3& init, const SimSettings& cfg, Advance&& advance,
               TimeOf&& time_of, Keep&& keep) {
  Trajectory traj{p, cfg, {}};
  const std::int64_t n_steps = cfg.steps();
  traj.samples.reserve(static_cast<std::size_t>(n_steps / cfg.sample_every + 1));

  auto emit = [&](std::int64_t n, const State3& s) {
    if (n % cfg.sample_every == 0 && keep(n)) traj.samples.push_back({time_of(n), s});
  };

  State3 s = init;
  emit(0, s);
  for (std::int64_t n = 1; n <= n_steps; ++n) {
    State3 next;
    try {
      next = advance(n, s);
    } catch (const BlowUpError& e) {
      throw BlowUpError(std::string(e.what()) + " at t=" + std::to_string(time_of(n - 1)) +
                            ", last finite state " + fmt_state(s),
                        s, time_of(n - 1));
    }
    if (exceeds_threshold(next)) {
      throw BlowUpError("trajectory blew up at t=" + std::to_string(time_of(n)) + ", state " +
                            fmt_state(next) + "; last finite state " + fmt_state(s),
                        s, time_of(n - 1));
    }
    s = next;
    emit(n, s);
  }
  return traj;
}

}  // namespace

void SimSettings::validate() const {
  if (!(std::isfinite(h) && h > 0.0)) throw DomainError("settings: h must be > 0");
  if (!(std::isfinite(t0) && std::isfinite(t_end) && t_end > t0)) {
    throw DomainError("settings: t_end must be greater than t0");
  }
  if (!(std::isfinite(discard) && discard >= 0.0 && discard < t_end - t0)) {
    throw DomainError("settings: discard must satisfy 0 <= discard < t_end - t0");
  }
  if (sample_every < 1) throw DomainError("settings: sample_every must be a positive integer");
  if (!((t_end - t0) / h < 9.0e18)) throw DomainError("settings: (t_end - t0) / h exceeds the step counter");
}

std::int64_t SimSettings::steps() const {
  validate();
  return std::max<std::int64_t>(1, std::llround((t_end - t0) / h));
}

std::string to_string(MulKind kind) { return kind == MulKind::Geometric ? "geometric" : "bigeometric"; }

State3 rk4_step(const SystemParams& p, const State3& s, double h) {
  const Deriv3 k1 = vector_field(s, p);
  const Deriv3 k2 = vector_field(s + (h / 2) * k1, p);
  const Deriv3 k3 = vector_field(s + (h / 2) * k2, p);
  const Deriv3 k4 = vector_field(s + h * k3, p);
  const State3 out = s + (h / 6) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  if (!out.finite()) throw BlowUpError("rk4 step produced a non-finite state", s);
  return out;
}

Trajectory integrate(const SystemParams& p, const State3& init, const SimSettings& cfg) {
  cfg.validate();
  check_init(init);
  const std::int64_t kept = first_kept_step(cfg);
  return run(
      p, init, cfg, [&](std::int64_t, const State3& s) { return rk4_step(p, s, cfg.h); },
      [&](std::int64_t n) { return cfg.t0 + static_cast<double>(n) * cfg.h; },
      [&](std::int64_t n) { return n >= kept; });
}

TangentState variational_rk4_step(const SystemParams& p, const State3& s, const TangentFrame& f,
                                  double h) {
  const Deriv3 k1 = vector_field(s, p);
  const TangentFrame m1 = jacobian(s, p) * f;

  const State3 s2 = s + (h / 2) * k1;
  const Deriv3 k2 = vector_field(s2, p);
  const TangentFrame m2 = jacobian(s2, p) * (f + (h / 2) * m1);

  const State3 s3 = s + (h / 2) * k2;
  const Deriv3 k3 = vector_field(s3, p);
  const TangentFrame m3 = jacobian(s3, p) * (f + (h / 2) * m2);

  const State3 s4 = s + h * k3;
  const Deriv3 k4 = vector_field(s4, p);
  const TangentFrame m4 = jacobian(s4, p) * (f + h * m3);

  TangentState out{s + (h / 6) * (k1 + 2.0 * k2 + 2.0 * k3 + k4),
                   f + (h / 6) * (m1 + 2.0 * m2 + 2.0 * m3 + m4)};
  if (!out.state.finite() || !out.frame.finite()) {
    throw BlowUpError("variational rk4 step produced a non-finite value", s);
  }
  return out;
}

namespace detail {

LogState to_log(const State3& s) {
  auto sgn = [](double v) { return std::copysign(1.0, v); };
  return {{sgn(s.x), sgn(s.y), sgn(s.z)}, {std::log(std::abs(s.x)), std::log(std::abs(s.y)), std::log(std::abs(s.z))}};
}

State3 from_log(const LogState& ls, const char* who) {
  const State3 out{ls.sign.x * std::exp(ls.u.x), ls.sign.y * std::exp(ls.u.y), ls.sign.z * std::exp(ls.u.z)};
  const char* bad = nullptr;
  if (!out.finite()) {
    bad = "overflowed";
  } else if (out.x == 0.0 || out.y == 0.0 || out.z == 0.0) {
    bad = "collapsed to zero (a multiplicative solution cannot cross zero)";
  }
  if (bad) {
    const State3 log_state = ls.u;
    throw BlowUpError(std::string(who) + ": coordinate " + bad + "; log-state " + fmt_state(log_state),
                      State3{});
  }
  return out;
}

}  // namespace detail

State3 geometric_rk4_step(const SystemParams& p, const State3& s, double h) {
  geometric_exponent(s, p);  // domain check on the input
  return geometric_rk4_step([&p](const State3& x) { return geometric_exponent(x, p); }, s, h);
}

TimedState bigeometric_rk4_step(const SystemParams& p, double t, const State3& s, double h_s) {
  bigeometric_exponent(t, s, p);
  return bigeometric_rk4_step([&p](double tt, const State3& x) { return bigeometric_exponent(tt, x, p); },
                              t, s, h_s);
}

Trajectory integrate_multiplicative(MulKind kind, const SystemParams& p, const State3& init,
                                    const SimSettings& cfg) {
  cfg.validate();
  check_init(init);
  geometric_exponent(init, p);

  if (kind == MulKind::Geometric) {
    const std::int64_t kept = first_kept_step(cfg);
    return run(
        p, init, cfg, [&](std::int64_t, const State3& s) { return geometric_rk4_step(p, s, cfg.h); },
        [&](std::int64_t n) { return cfg.t0 + static_cast<double>(n) * cfg.h; },
        [&](std::int64_t n) { return n >= kept; });
  }

  if (!(cfg.t0 > 0.0)) throw DomainError("bigeometric integration requires t0 > 0");
  SimSettings log_cfg = cfg;
  log_cfg.t0 = std::log(cfg.t0);
  log_cfg.t_end = std::log(cfg.t_end);
  log_cfg.discard = 0.0;
  if (!(log_cfg.t_end > log_cfg.t0) || !((log_cfg.t_end - log_cfg.t0) / cfg.h < 9.0e18)) {
    throw DomainError("settings: invalid bigeometric time span");
  }
  const double log_t0 = log_cfg.t0;
  const double keep_from = cfg.t0 + cfg.discard;
  auto time_of = [&](std::int64_t n) { return std::exp(log_t0 + static_cast<double>(n) * cfg.h); };

  Trajectory traj = run(
      p, init, log_cfg,
      [&](std::int64_t n, const State3& s) { return bigeometric_rk4_step(p, time_of(n - 1), s, cfg.h).state; },
      time_of, [&](std::int64_t n) { return time_of(n) >= keep_from * (1.0 - 1e-12); });
  traj.settings = cfg;
  return traj;
}

}  // namespace qlorenz
