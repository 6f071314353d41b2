#include "qlorenz/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <limits>

namespace qlorenz {

std::string to_string(EquilibriumLabel label) {
  switch (label) {
    case EquilibriumLabel::O: return "O";
    case EquilibriumLabel::Eplus: return "E+";
    case EquilibriumLabel::Eminus: return "E-";
  }
  return "?";
}

std::string to_string(Stability s) {
  switch (s) {
    case Stability::StableNode: return "stable_node";
    case Stability::StableFocus: return "stable_focus";
    case Stability::UnstableSaddleFocus: return "unstable_saddle_focus";
    case Stability::Unstable: return "unstable";
    case Stability::Degenerate: return "degenerate";
  }
  return "?";
}

std::array<Equilibrium, 3> find_equilibria(const SystemParams& p) {
  const double rho = p.rho();
  const State3 eplus{std::pow(p.beta() * rho * rho * rho, 0.25), std::pow(p.beta() / rho, 0.25), rho};
  return {{{EquilibriumLabel::O, {0.0, 0.0, 0.0}},
           {EquilibriumLabel::Eplus, eplus},
           {EquilibriumLabel::Eminus, apply_symmetry(eplus)}}};
}

StabilityReport classify_stability(const Equilibrium& e, const SystemParams& p) {
  const EigenTriple ev = eigenvalues3(jacobian(e.location, p));
  double scale = 0.0;
  for (const auto& v : ev.values) scale = std::max(scale, std::abs(v));
  const double tol = 1e-9 * (1.0 + scale);

  bool any_positive = false, all_negative = true, any_complex = false;
  bool complex_positive = false, real_negative = false;
  for (const auto& v : ev.values) {
    const bool is_complex = v.imag() != 0.0;
    any_complex = any_complex || is_complex;
    if (v.real() > tol) {
      any_positive = true;
      complex_positive = complex_positive || is_complex;
    }
    if (!(v.real() < -tol)) all_negative = false;
    if (!is_complex && v.real() < -tol) real_negative = true;
  }

  StabilityReport report{e, ev, Stability::Degenerate, {}};
  if (any_positive) {
    report.classification =
        (complex_positive && real_negative) ? Stability::UnstableSaddleFocus : Stability::Unstable;
  } else if (all_negative) {
    report.classification = any_complex ? Stability::StableFocus : Stability::StableNode;
  } else if (on_equilibrium_line(e.location)) {
    report.annotation =
        "zero eigenvalue: linearization is inconclusive (the point is usually described as unstable); "
        "the zero mode is tangent to the line of equilibria x = z = 0";
  } else {
    report.annotation = "eigenvalue on the imaginary axis: linearization is inconclusive";
  }
  return report;
}

void BenettinSettings::validate() const {
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(h)) throw DomainError("benettin: h must be > 0");
  if (!positive(transient)) throw DomainError("benettin: transient must be > 0");
  if (!positive(total_time)) throw DomainError("benettin: total_time must be > 0");
  if (!positive(renorm_interval)) throw DomainError("benettin: renorm_interval must be > 0");
  if (renorm_interval < h) throw DomainError("benettin: renorm_interval must be >= h");
  if (!(total_time / h < 9.0e18 && transient / h < 9.0e18)) throw DomainError("benettin: too many steps");
}

namespace {

void check_bounded(const State3& s, double t) {
  if (!s.finite() || std::abs(s.x) > kBlowUpThreshold || std::abs(s.y) > kBlowUpThreshold ||
      std::abs(s.z) > kBlowUpThreshold) {
    throw BlowUpError("trajectory blew up at t=" + std::to_string(t), s, t);
  }
}

// Evolves (state, identity frame) for n_steps of size h, re-orthonormalizing
// every `every` steps and at the end; returns the summed log growth factors.
std::array<double, 3> accumulate_log_growth(const SystemParams& p, State3& s, std::int64_t n_steps, double h,
                                            std::int64_t every) {
  std::array<double, 3> acc{0.0, 0.0, 0.0};
  TangentFrame frame = TangentFrame::identity();
  for (std::int64_t n = 1; n <= n_steps; ++n) {
    TangentState next = variational_rk4_step(p, s, frame, h);
    check_bounded(next.state, static_cast<double>(n) * h);
    s = next.state;
    frame = next.frame;
    if (n % every == 0 || n == n_steps) {
      const Orthonormalized on = gram_schmidt3(frame);
      for (std::size_t i = 0; i < 3; ++i) acc[i] += std::log(on.norms[i]);
      frame = on.frame;
    }
  }
  return acc;
}

}  // namespace

LyapunovSpectrum lyapunov_spectrum(const SystemParams& p, const State3& init, const BenettinSettings& cfg) {
  cfg.validate();
  if (!init.finite()) throw DomainError("lyapunov: initial state must be finite");
  if (norm(vector_field(init, p)) < 1e-10) throw DomainError("lyapunov: initial state is an equilibrium");

  State3 s = init;
  const std::int64_t n_transient = std::llround(cfg.transient / cfg.h);
  for (std::int64_t n = 1; n <= n_transient; ++n) {
    s = rk4_step(p, s, cfg.h);
    check_bounded(s, static_cast<double>(n) * cfg.h);
  }

  const std::int64_t n_steps = std::max<std::int64_t>(1, std::llround(cfg.total_time / cfg.h));
  const std::int64_t every = std::max<std::int64_t>(1, std::llround(cfg.renorm_interval / cfg.h));
  const std::array<double, 3> acc = accumulate_log_growth(p, s, n_steps, cfg.h, every);

  const double elapsed = static_cast<double>(n_steps) * cfg.h;
  LyapunovSpectrum out{{acc[0] / elapsed, acc[1] / elapsed, acc[2] / elapsed}, 0.0, cfg};
  std::sort(out.exponents.begin(), out.exponents.end(), std::greater<>());
  out.dimension = kaplan_yorke(out.exponents);
  return out;
}

double kaplan_yorke(const std::array<double, 3>& l) {
  for (double v : l) {
    if (!std::isfinite(v)) throw DomainError("kaplan_yorke: exponents must be finite");
  }
  if (l[0] < l[1] || l[1] < l[2]) throw DomainError("kaplan_yorke: exponents must be sorted descending");
  if (l[0] < 0.0) return 0.0;

  double partial = 0.0;
  std::size_t j = 0;
  while (j < 3 && partial + l[j] >= 0.0) partial += l[j++];
  if (j == 3) return 3.0;
  return static_cast<double>(j) + partial / std::abs(l[j]);
}

ContractionResult volume_contraction_check(const SystemParams& p, const State3& init, double t, double h) {
  if (!(std::isfinite(t) && t > 0.0)) throw DomainError("contraction: t must be > 0");
  if (!(std::isfinite(h) && h > 0.0)) throw DomainError("contraction: h must be > 0");
  if (!init.finite()) throw DomainError("contraction: initial state must be finite");

  const std::int64_t n_steps = std::max<std::int64_t>(1, std::llround(t / h));
  const double step = t / static_cast<double>(n_steps);
  const std::int64_t every = std::max<std::int64_t>(1, std::llround(0.5 / step));

  State3 s = init;
  const std::array<double, 3> acc = accumulate_log_growth(p, s, n_steps, step, every);
  return {(acc[0] + acc[1] + acc[2]) / t, divergence(p)};
}

SweepCell sweep_cell(const SystemParams& p, const SimSettings& cfg, const BenettinSettings& lyap_cfg,
                     const State3& init) {
  SweepCell cell{p.beta(), {}, std::nullopt};
  try {
    const Trajectory traj = integrate(p, init, cfg);
    double z_min = std::numeric_limits<double>::infinity();
    double z_max = -z_min, x_min = z_min, x_max = -z_min;
    for (const auto& smp : traj.samples) {
      z_min = std::min(z_min, smp.state.z);
      z_max = std::max(z_max, smp.state.z);
      x_min = std::min(x_min, smp.state.x);
      x_max = std::max(x_max, smp.state.x);
    }
    cell.summary.z_min = z_min;
    cell.summary.z_max = z_max;
    cell.summary.x_extent = x_max - x_min;
    cell.summary.bounded = true;
  } catch (const NumericalError& e) {
    cell.summary.largest_lyapunov = std::numeric_limits<double>::quiet_NaN();
    cell.error = std::string("integrate: ") + e.what();
    return cell;
  }
  try {
    cell.summary.largest_lyapunov = lyapunov_spectrum(p, init, lyap_cfg).exponents[0];
  } catch (const std::exception& e) {
    cell.summary.largest_lyapunov = std::numeric_limits<double>::quiet_NaN();
    cell.error = std::string("lyapunov: ") + e.what();
  }
  return cell;
}

SweepReport sweep_beta(const SystemParams& p_base, const std::vector<double>& betas, const SimSettings& cfg,
                       const BenettinSettings& lyap_cfg, const State3& init) {
  if (betas.empty()) throw DomainError("sweep: betas must be non-empty");
  cfg.validate();
  lyap_cfg.validate();
  std::vector<SystemParams> params;
  params.reserve(betas.size());
  for (double b : betas) params.push_back(p_base.with_beta(b));

  std::vector<std::future<SweepCell>> pending;
  pending.reserve(params.size());
  for (const auto& p : params) {
    pending.push_back(std::async(std::launch::async, [&cfg, &lyap_cfg, &init, p] {
      return sweep_cell(p, cfg, lyap_cfg, init);
    }));
  }
  SweepReport report;
  for (auto& f : pending) report.cells.push_back(f.get());
  return report;
}

}  // namespace qlorenz
