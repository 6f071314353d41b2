#pragma once

// CSV trajectories and JSON report documents.
//
// CSV: header `t,x,y,z`, one row per sample, LF line endings, every float with
// 17 significant digits so a reload is bit-exact.
// JSON: deterministic key order; complex numbers as {"re", "im"}; NaN as null.

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "qlorenz/analysis.hpp"
#include "qlorenz/integrators.hpp"

namespace qlorenz {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";

/// Tolerance on |sum of exponents - divergence| beyond which a report warns.
inline constexpr double kLyapunovSumTolerance = 0.5;

struct ReportDocument {
  std::string schema_version = kSchemaVersion;
  std::string command;
  Json inputs = Json::object();
  Json results = Json::object();
  std::vector<std::string> warnings;
};

/// 17 significant digits, locale independent.
std::string format_double(double v);

void write_csv(const Trajectory& traj, std::ostream& sink);
/// Samples from a stream produced by write_csv. Throws DomainError on malformed input.
std::vector<Sample> read_csv(std::istream& source);

void write_json(const ReportDocument& report, std::ostream& sink);

Json to_json(const SystemParams& p);
Json to_json(const State3& s);
Json to_json(const SimSettings& cfg);
Json to_json(const BenettinSettings& cfg);
Json to_json(const EigenTriple& e);
Json to_json(const Equilibrium& e);
Json to_json(const StabilityReport& r);
Json to_json(const LyapunovSpectrum& l);
Json to_json(const ContractionResult& c);
Json to_json(const SweepReport& r);

/// Warnings attached to a Lyapunov report, e.g. a spectrum whose sum misses
/// the divergence by more than kLyapunovSumTolerance.
std::vector<std::string> lyapunov_warnings(const LyapunovSpectrum& l, const SystemParams& p);

}  // namespace qlorenz
