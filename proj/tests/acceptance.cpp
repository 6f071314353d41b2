// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "golden_cases.hpp"
#include "qlorenz/analysis.hpp"
#include "qlorenz/cli.hpp"
#include "qlorenz/error.hpp"
#include "support.hpp"

using namespace qlorenz;
using namespace qlorenz::testing;
using cplx = std::complex<double>;

namespace {

const SystemParams kChaotic{12.0, 8.0, 4.0};

int failures = 0;

void report(const std::string& id, bool ok, const std::string& detail) {
  std::printf("[%s] %s: %s\n", ok ? "PASS" : "FAIL", id.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

// Runs a criterion body; exceptions count as failure with their message.
void criterion(const std::string& id, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    report(id, false, std::string("exception: ") + e.what());
  }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string num(double v) {
  std::ostringstream os;
  os.precision(8);
  os << v;
  return os.str();
}

bool close(const cplx& a, const cplx& b, double tol) {
  return std::abs(a.real() - b.real()) <= tol && std::abs(a.imag() - b.imag()) <= tol;
}

void ac1_equilibria() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto eq = find_equilibria(kChaotic);
  const State3 p = eq[1].location, m = eq[2].location;
  bool ok = eq[0].location == State3{0, 0, 0};
  ok = ok && std::abs(p.x - 6.73) < 0.005 && std::abs(p.y - 0.84) < 0.005 && p.z == 8.0;
  ok = ok && std::abs(m.x + 6.73) < 0.005 && std::abs(m.y + 0.84) < 0.005 && m.z == 8.0;
  ok = ok && std::abs(p.x - 6.727) < 5e-4 && std::abs(p.y - 0.841) < 5e-4;
  double worst = 0.0;
  for (const auto& e : eq) worst = std::max(worst, norm(vector_field(e.location, kChaotic)));
  ok = ok && worst < 1e-10;
  report("AC-1 equilibria", ok,
         "E+=(" + num(p.x) + ", " + num(p.y) + ", " + num(p.z) + "), max residual " + num(worst) + ", " +
             num(seconds_since(t0)) + " s");
}

void ac2_eigenvalues() {
  const auto eq = find_equilibria(kChaotic);
  const EigenTriple o = eigenvalues3(jacobian(eq[0].location, kChaotic));
  bool ok = o[0] == cplx{0.0} && o[1] == cplx{-4.0} && o[2] == cplx{-12.0};
  std::string detail = "J(O)={" + num(o[0].real()) + ", " + num(o[1].real()) + ", " + num(o[2].real()) + "}";
  double worst_sum = std::abs(o.sum().real() + 16.0);
  for (int k : {1, 2}) {
    const EigenTriple e = eigenvalues3(jacobian(eq[static_cast<std::size_t>(k)].location, kChaotic));
    ok = ok && close(e[0], {2.65, 23.87}, 0.05) && close(e[1], {2.65, -23.87}, 0.05) && close(e[2], {-21.3, 0.0}, 0.05);
    worst_sum = std::max(worst_sum, std::abs(e.sum().real() + 16.0));
    if (k == 1) {
      detail += ", J(E+)={" + num(e[0].real()) + "+" + num(e[0].imag()) + "i, " + num(e[1].real()) +
                num(e[1].imag()) + "i, " + num(e[2].real()) + "}";
    }
  }
  ok = ok && worst_sum <= 1e-9;
  report("AC-2 Jacobian eigenvalues", ok, detail + ", max |sum+16|=" + num(worst_sum));
}

void ac3_dissipativity() {
  const auto t0 = std::chrono::steady_clock::now();
  const double div = divergence(kChaotic);
  const ContractionResult c = volume_contraction_check(kChaotic, {1, 1, 1}, 1.0, 0.001);
  const double rel = std::abs(c.measured_log_rate - (-16.0)) / 16.0;
  const double elapsed = seconds_since(t0);
  report("AC-3 dissipativity", div == -16.0 && c.theoretical == -16.0 && rel < 1e-3 && elapsed < 1.0,
         "divergence=" + num(div) + ", measured log-rate=" + num(c.measured_log_rate) + " (rel err " + num(rel) +
             "), " + num(elapsed) + " s");
}

void ac4_kaplan_yorke() {
  const double d = kaplan_yorke({5.4162, 2.1912, -19.2269});
  report("AC-4 Kaplan-Yorke formula", std::abs(d - 2.3957) < 1e-4, "D=" + num(d));
}

void ac5_lyapunov() {
  const auto t0 = std::chrono::steady_clock::now();
  const LyapunovSpectrum l = lyapunov_spectrum(kChaotic, {1, 1, 1}, BenettinSettings{0.001, 100.0, 1000.0, 0.5});
  const double elapsed = seconds_since(t0);
  const std::string spectrum = "exponents (" + num(l.exponents[0]) + ", " + num(l.exponents[1]) + ", " +
                               num(l.exponents[2]) + "), D=" + num(l.dimension) + ", " + num(elapsed) + " s";
  int near_zero = 0;
  for (double e : l.exponents) near_zero += (e >= -0.3 && e <= 0.3);
  report("AC-5a largest exponent > 0.1", l.exponents[0] > 0.1 && elapsed <= 120.0, spectrum);
  report("AC-5b exactly one exponent in [-0.3, 0.3]", near_zero == 1, "count=" + std::to_string(near_zero));
  report("AC-5c exponent sum = -16 +/- 0.5", std::abs(l.sum() + 16.0) <= 0.5, "sum=" + num(l.sum()));
  report("AC-5d dimension in (2, 3)", l.dimension > 2.0 && l.dimension < 3.0, "D=" + num(l.dimension));
}

void ac6_rk4_order() {
  auto final_state = [](double h) {
    return integrate(kChaotic, {1, 1, 1}, {0.0, 1.0, h, 0.0, 1}).samples.back().state;
  };
  const State3 reference = final_state(6.25e-4);
  const double e1 = max_abs_diff(final_state(1e-2), reference);
  const double e2 = max_abs_diff(final_state(5e-3), reference);
  const double e3 = max_abs_diff(final_state(2.5e-3), reference);
  const double r1 = e1 / e2, r2 = e2 / e3;
  auto in_band = [](double r) { return r >= 16.0 * 0.75 && r <= 16.0 * 1.25; };
  report("AC-6 RK4 order", in_band(r1) && in_band(r2),
         "errors " + num(e1) + ", " + num(e2) + ", " + num(e3) + "; ratios " + num(r1) + ", " + num(r2) +
             " (band [12, 20])");
}

void ac7_symmetry() {
  const SimSettings cfg{0.0, 10.0, 0.001, 0.0, 1};
  const Trajectory a = integrate(kChaotic, {1, 1, 1}, cfg);
  const Trajectory b = integrate(kChaotic, {-1, -1, 1}, cfg);
  double worst = 0.0;
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    worst = std::max(worst, max_abs_diff(apply_symmetry(a.samples[i].state), b.samples[i].state));
  }
  report("AC-7 symmetry conjugacy", a.samples.size() == 10001 && worst <= 1e-13,
         std::to_string(a.samples.size() - 1) + " steps, max deviation " + num(worst));
}

void ac8a_multiplicative_equivalence() {
  // h = 1e-5: 10^4 steps cover t in [0, 0.1], before any coordinate reaches zero.
  const double h = 1e-5;
  State3 s{1, 1, 1};
  Arr3 u{0, 0, 0};
  auto log_rhs = [](const Arr3& w) {
    const Arr3 x{std::exp(w[0]), std::exp(w[1]), std::exp(w[2])};
    const Arr3 f = field(x, 12.0, 8.0, 4.0);
    return Arr3{f[0] / x[0], f[1] / x[1], f[2] / x[2]};
  };
  double worst = 0.0;
  for (int n = 0; n < 10000; ++n) {
    s = geometric_rk4_step(kChaotic, s, h);
    u = reference_rk4(log_rhs, u, h);
    worst = std::max(worst, max_abs_diff(s, {std::exp(u[0]), std::exp(u[1]), std::exp(u[2])}));
  }
  report("AC-8a geometric = exp(RK4 on log system)", worst <= 1e-10, "10^4 steps, max deviation " + num(worst));
}

void ac8b_multiplicative_chaos(MulKind kind) {
  const std::string id = "AC-8b " + to_string(kind) + " run bounded and non-periodic";
  SimSettings cfg{0.0, 100.0, 0.001, 0.0, 1};
  if (kind == MulKind::Bigeometric) cfg = {1.0, 101.0, std::log(101.0) / 1e5, 0.0, 1};
  try {
    const Trajectory t = integrate_multiplicative(kind, kChaotic, {1, 1, 1}, cfg);
    double peak = 0.0;
    for (const auto& s : t.samples) peak = std::max({peak, std::abs(s.state.x), std::abs(s.state.y), std::abs(s.state.z)});
    const double ac = max_autocorrelation_in_time(t.samples, 50.0);
    report(id, t.samples.size() == 100001 && peak < 1e6 && ac < 0.99,
           "10^5 steps, peak " + num(peak) + ", max autocorrelation " + num(ac));
  } catch (const BlowUpError& e) {
    report(id, false, std::string("run stopped: ") + e.what());
  }
}

void ac9_sweep() {
  const auto t0 = std::chrono::steady_clock::now();
  const SweepReport r = sweep_beta(kChaotic, {0.1, 0.5, 2.0, 4.0, 10.0}, SimSettings{}, BenettinSettings{});
  const double elapsed = seconds_since(t0);
  bool ok = r.cells.size() == 5 && elapsed <= 600.0;
  std::string detail;
  for (const auto& c : r.cells) {
    ok = ok && !c.error && c.summary.bounded;
    detail += "beta=" + num(c.beta) + ": z[" + num(c.summary.z_min) + ", " + num(c.summary.z_max) + "] l1=" +
              num(c.summary.largest_lyapunov) + "; ";
  }
  ok = ok && r.cells.size() == 5 && r.cells[3].beta == 4.0 && r.cells[3].summary.largest_lyapunov > 0.0;
  for (std::size_t i = 0; i < r.cells.size(); ++i) {
    for (std::size_t j = i + 1; j < r.cells.size(); ++j) {
      const double a = r.cells[i].summary.z_max - r.cells[i].summary.z_min;
      const double b = r.cells[j].summary.z_max - r.cells[j].summary.z_min;
      ok = ok && std::abs(a - b) > 1e-3 * std::max(a, b);
    }
  }
  report("AC-9 beta sweep", ok, detail + num(elapsed) + " s");
}

void ac10_golden() {
  bool ok = true;
  std::string detail;
  for (const auto& c : golden_cases()) {
    std::ostringstream a, b, ea, eb;
    const int ca = run_cli(c.args, a, ea);
    const int cb = run_cli(c.args, b, eb);
    const bool same = ca == 0 && cb == 0 && a.str() == b.str() &&
                      a.str() == slurp(std::string(QLORENZ_GOLDEN_DIR) + "/" + c.file);
    if (!same) detail += c.file + " differs; ";
    ok = ok && same;
  }
  report("AC-10 CLI golden files", ok,
         ok ? std::to_string(golden_cases().size()) + " invocations byte-identical" : detail);
}

}  // namespace

int main() {
  criterion("AC-1 equilibria", ac1_equilibria);
  criterion("AC-2 Jacobian eigenvalues", ac2_eigenvalues);
  criterion("AC-3 dissipativity", ac3_dissipativity);
  criterion("AC-4 Kaplan-Yorke formula", ac4_kaplan_yorke);
  criterion("AC-5 Lyapunov spectrum", ac5_lyapunov);
  criterion("AC-6 RK4 order", ac6_rk4_order);
  criterion("AC-7 symmetry conjugacy", ac7_symmetry);
  criterion("AC-8a geometric equivalence", ac8a_multiplicative_equivalence);
  criterion("AC-8b geometric", [] { ac8b_multiplicative_chaos(MulKind::Geometric); });
  criterion("AC-8b bigeometric", [] { ac8b_multiplicative_chaos(MulKind::Bigeometric); });
  criterion("AC-9 beta sweep", ac9_sweep);
  criterion("AC-10 CLI golden files", ac10_golden);
  std::printf("%d criterion check(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
