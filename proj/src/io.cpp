#include "qlorenz/io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "qlorenz/error.hpp"

namespace qlorenz {

namespace {

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

double parse_double(const std::string& field, std::size_t line) {
  double v = 0.0;
  const char* first = field.data();
  const char* last = first + field.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last) {
    throw DomainError("csv line " + std::to_string(line) + ": bad number '" + field + "'");
  }
  return v;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, ptr);
}

void write_csv(const Trajectory& traj, std::ostream& sink) {
  std::string out = "t,x,y,z\n";
  for (const auto& s : traj.samples) {
    out += format_double(s.t);
    out += ',';
    out += format_double(s.state.x);
    out += ',';
    out += format_double(s.state.y);
    out += ',';
    out += format_double(s.state.z);
    out += '\n';
  }
  sink << out;
  if (!sink) throw std::runtime_error("write_csv: sink write failed");
}

std::vector<Sample> read_csv(std::istream& source) {
  std::string line;
  if (!std::getline(source, line) || line != "t,x,y,z") throw DomainError("csv: missing header t,x,y,z");
  std::vector<Sample> samples;
  std::size_t lineno = 1;
  while (std::getline(source, line)) {
    ++lineno;
    std::istringstream row(line);
    std::string field;
    double v[4];
    int n = 0;
    while (std::getline(row, field, ',')) {
      if (n == 4) throw DomainError("csv line " + std::to_string(lineno) + ": too many fields");
      v[n++] = parse_double(field, lineno);
    }
    if (n != 4) throw DomainError("csv line " + std::to_string(lineno) + ": expected 4 fields");
    samples.push_back({v[0], {v[1], v[2], v[3]}});
  }
  return samples;
}

void write_json(const ReportDocument& report, std::ostream& sink) {
  Json doc;
  doc["schema_version"] = report.schema_version;
  doc["command"] = report.command;
  doc["inputs"] = report.inputs;
  doc["results"] = report.results;
  doc["warnings"] = report.warnings;
  sink << doc.dump(2) << '\n';
  if (!sink) throw std::runtime_error("write_json: sink write failed");
}

Json to_json(const SystemParams& p) {
  return {{"sigma", p.sigma()}, {"rho", p.rho()}, {"beta", p.beta()}};
}

Json to_json(const State3& s) { return {{"x", number(s.x)}, {"y", number(s.y)}, {"z", number(s.z)}}; }

Json to_json(const SimSettings& cfg) {
  return {{"t0", cfg.t0}, {"t_end", cfg.t_end}, {"h", cfg.h}, {"discard", cfg.discard},
          {"sample_every", cfg.sample_every}};
}

Json to_json(const BenettinSettings& cfg) {
  return {{"h", cfg.h}, {"transient", cfg.transient}, {"total_time", cfg.total_time},
          {"renorm_interval", cfg.renorm_interval}};
}

Json to_json(const EigenTriple& e) {
  Json arr = Json::array();
  for (const auto& v : e.values) arr.push_back({{"re", v.real()}, {"im", v.imag()}});
  return arr;
}

Json to_json(const Equilibrium& e) { return {{"label", to_string(e.label)}, {"location", to_json(e.location)}}; }

Json to_json(const StabilityReport& r) {
  Json j = to_json(r.equilibrium);
  j["eigenvalues"] = to_json(r.eigenvalues);
  j["eigenvalue_sum"] = r.eigenvalues.sum().real();
  j["classification"] = to_string(r.classification);
  j["annotation"] = r.annotation;
  return j;
}

Json to_json(const LyapunovSpectrum& l) {
  return {{"exponents", {number(l.exponents[0]), number(l.exponents[1]), number(l.exponents[2])}},
          {"sum", number(l.sum())},
          {"kaplan_yorke_dimension", number(l.dimension)},
          {"settings", to_json(l.settings)}};
}

Json to_json(const ContractionResult& c) {
  return {{"measured_log_rate", number(c.measured_log_rate)}, {"theoretical", number(c.theoretical)}};
}

Json to_json(const SweepReport& r) {
  Json cells = Json::array();
  for (const auto& c : r.cells) {
    cells.push_back({{"beta", c.beta},
                     {"z_min", number(c.summary.z_min)},
                     {"z_max", number(c.summary.z_max)},
                     {"x_extent", number(c.summary.x_extent)},
                     {"largest_lyapunov", number(c.summary.largest_lyapunov)},
                     {"bounded", c.summary.bounded},
                     {"error", c.error ? Json(*c.error) : Json(nullptr)}});
  }
  return {{"cells", cells}};
}

std::vector<std::string> lyapunov_warnings(const LyapunovSpectrum& l, const SystemParams& p) {
  std::vector<std::string> w;
  const double gap = l.sum() - divergence(p);
  if (!(std::abs(gap) <= kLyapunovSumTolerance)) {
    w.push_back("sum of Lyapunov exponents " + format_double(l.sum()) + " differs from the divergence " +
                format_double(divergence(p)) + " by more than " + format_double(kLyapunovSumTolerance));
  }
  return w;
}

}  // namespace qlorenz
