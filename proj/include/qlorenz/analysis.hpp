#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qlorenz/integrators.hpp"
#include "qlorenz/linalg3.hpp"
#include "qlorenz/model.hpp"

namespace qlorenz {

enum class EquilibriumLabel { O, Eplus, Eminus };
std::string to_string(EquilibriumLabel label);

struct Equilibrium {
  EquilibriumLabel label;
  State3 location;
};

/// O = (0, 0, 0), E+ = ((beta rho^3)^(1/4), (beta/rho)^(1/4), rho), E- its
/// symmetry image.
///
/// These are the isolated equilibria. The flow also vanishes on the whole line
/// x = z = 0 (any y), which contains O; see on_equilibrium_line().
std::array<Equilibrium, 3> find_equilibria(const SystemParams& p);

/// True when s lies on the line of equilibria {x = 0, z = 0}.
constexpr bool on_equilibrium_line(const State3& s) { return s.x == 0.0 && s.z == 0.0; }

enum class Stability { StableNode, StableFocus, UnstableSaddleFocus, Unstable, Degenerate };
std::string to_string(Stability s);

struct StabilityReport {
  Equilibrium equilibrium;
  EigenTriple eigenvalues;
  Stability classification;
  /// Free-form remark, e.g. why a degenerate point is still reported unstable.
  std::string annotation;
};

/// Linearization verdict from the eigenvalues of the Jacobian at e:
/// any Re > tol is Unstable (UnstableSaddleFocus for a complex pair with Re > 0
/// plus a negative real eigenvalue); all Re < -tol is StableFocus/StableNode;
/// otherwise Degenerate. tol = 1e-9 (1 + max |lambda|).
StabilityReport classify_stability(const Equilibrium& e, const SystemParams& p);

struct BenettinSettings {
  double h = 0.001;
  double transient = 100.0;
  double total_time = 1000.0;
  double renorm_interval = 0.5;

  void validate() const;
};

struct LyapunovSpectrum {
  /// Sorted descending, units 1/time.
  std::array<double, 3> exponents;
  double dimension;
  BenettinSettings settings;

  double sum() const { return exponents[0] + exponents[1] + exponents[2]; }
};

/// Benettin's method: after the transient, evolve an orthonormal tangent frame
/// with the variational equations, re-orthonormalize every renorm_interval and
/// average the log growth factors over total_time.
LyapunovSpectrum lyapunov_spectrum(const SystemParams& p, const State3& init, const BenettinSettings& cfg);

/// Kaplan-Yorke dimension of a descending spectrum. 0 when l1 < 0, 3 when every
/// partial sum is non-negative.
double kaplan_yorke(const std::array<double, 3>& exponents);

struct ContractionResult {
  double measured_log_rate;
  double theoretical;
};

/// Propagates an identity frame for time t and reports ln|det| / t next to
/// divergence(p). The frame is re-orthonormalized every 0.5 time units, and
/// the step is adjusted to t / round(t / h) so that the run ends exactly at t.
ContractionResult volume_contraction_check(const SystemParams& p, const State3& init, double t, double h);

struct SweepSummary {
  double z_min = 0.0;
  double z_max = 0.0;
  double x_extent = 0.0;
  double largest_lyapunov = 0.0;
  bool bounded = false;
};

struct SweepCell {
  double beta;
  SweepSummary summary;
  /// Set when the cell failed; the sweep continues with the next beta.
  std::optional<std::string> error;
};

struct SweepReport {
  std::vector<SweepCell> cells;
};

/// One cell per beta, in input order. Cells are computed concurrently and are
/// bit-identical to isolated runs.
SweepReport sweep_beta(const SystemParams& p_base, const std::vector<double>& betas, const SimSettings& cfg,
                       const BenettinSettings& lyap_cfg, const State3& init = {1.0, 1.0, 1.0});

SweepCell sweep_cell(const SystemParams& p, const SimSettings& cfg, const BenettinSettings& lyap_cfg,
                     const State3& init);

}  // namespace qlorenz
