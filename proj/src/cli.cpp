#include "qlorenz/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <sstream>

#include "qlorenz/analysis.hpp"
#include "qlorenz/error.hpp"
#include "qlorenz/io.hpp"

namespace qlorenz {

namespace {

std::vector<double> parse_list(const std::string& text, const char* flag) {
  std::vector<double> values;
  std::istringstream is(text);
  std::string field;
  while (std::getline(is, field, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(field, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != field.size()) {
      throw DomainError(std::string(flag) + ": '" + field + "' is not a number");
    }
    values.push_back(v);
  }
  return values;
}

State3 parse_state(const std::string& text) {
  const auto v = parse_list(text, "--init");
  if (v.size() != 3) throw DomainError("--init: expected three comma-separated values x,y,z");
  return {v[0], v[1], v[2]};
}

struct ParamFlags {
  double sigma = 12.0;
  double rho = 8.0;
  double beta = 4.0;

  void attach(CLI::App* app) {
    app->add_option("--sigma", sigma, "sigma (> 0)")->capture_default_str();
    app->add_option("--rho", rho, "rho (> 0)")->capture_default_str();
    app->add_option("--beta", beta, "beta (> 0)")->capture_default_str();
  }
  SystemParams get() const { return {sigma, rho, beta}; }
};

struct SimFlags {
  SimSettings cfg{0.0, 1000.0, 0.001, 0.0, 1};

  void attach(CLI::App* app) {
    app->add_option("--t-end", cfg.t_end, "end time")->capture_default_str();
    app->add_option("--h", cfg.h, "step size")->capture_default_str();
    app->add_option("--discard", cfg.discard, "leading time omitted from output")->capture_default_str();
    app->add_option("--sample-every", cfg.sample_every, "keep every n-th step")->capture_default_str();
  }
};

struct BenettinFlags {
  BenettinSettings cfg;

  void attach(CLI::App* app, bool with_h) {
    if (with_h) app->add_option("--h", cfg.h, "step size")->capture_default_str();
    app->add_option("--transient", cfg.transient, "discarded transient time")->capture_default_str();
    app->add_option("--total-time", cfg.total_time, "averaging time")->capture_default_str();
    app->add_option("--renorm", cfg.renorm_interval, "re-orthonormalization interval")->capture_default_str();
  }
};

struct Common {
  ParamFlags params;
  std::string init = "1,1,1";
  std::string out_path = "-";
  std::string format;

  void attach(CLI::App* app, const std::string& default_format, bool with_init) {
    params.attach(app);
    if (with_init) app->add_option("--init", init, "initial state x,y,z")->capture_default_str();
    app->add_option("--out", out_path, "output file, '-' for stdout")->capture_default_str();
    format = default_format;
    app->add_option("--format", format, "output format")
        ->check(CLI::IsMember({default_format}))
        ->capture_default_str();
  }
};

Json echo_common(const Common& c, bool with_init) {
  Json j;
  j["params"] = to_json(c.params.get());
  if (with_init) j["init"] = to_json(parse_state(c.init));
  return j;
}

std::string render(const ReportDocument& doc) {
  std::ostringstream os;
  write_json(doc, os);
  return os.str();
}

std::string render(const Trajectory& traj) {
  std::ostringstream os;
  write_csv(traj, os);
  return os.str();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Modified quadratic Lorenz system: simulation and analysis", "qlorenz"};
  app.set_help_flag("--help", "print this help message and exit");
  app.require_subcommand(1, 1);

  Common common;
  SimFlags sim;
  SimFlags sweep_sim{SimSettings{0.0, 1000.0, 0.001, 100.0, 1}};
  BenettinFlags benettin;
  std::string kind = "geometric";
  double t0 = 0.0;
  std::string betas = "0.1,0.5,2,4,10";
  double contraction_t = 1.0;
  double contraction_h = 0.001;

  // Each subcommand fills `result` with the bytes to emit on success.
  std::string result;
  std::function<void()> action;

  auto* simulate = app.add_subcommand("simulate", "RK4 trajectory as CSV t,x,y,z");
  common.attach(simulate, "csv", true);
  sim.attach(simulate);
  simulate->add_option("--t0", sim.cfg.t0, "start time")->capture_default_str();
  simulate->callback([&] {
    action = [&] { result = render(integrate(common.params.get(), parse_state(common.init), sim.cfg)); };
  });

  auto* msim = app.add_subcommand("msim", "geometric / bigeometric multiplicative RK4 trajectory as CSV");
  common.attach(msim, "csv", true);
  sim.attach(msim);
  msim->add_option("--kind", kind, "geometric or bigeometric")
      ->check(CLI::IsMember({"geometric", "bigeometric"}))
      ->required();
  auto* t0_opt = msim->add_option("--t0", t0, "start time (required and > 0 for bigeometric)");
  msim->callback([&] {
    const MulKind mk = kind == "geometric" ? MulKind::Geometric : MulKind::Bigeometric;
    if (mk == MulKind::Bigeometric && t0_opt->count() == 0) {
      throw DomainError("msim --kind bigeometric requires --t0 > 0");
    }
    sim.cfg.t0 = t0;
    action = [&, mk] {
      result = render(integrate_multiplicative(mk, common.params.get(), parse_state(common.init), sim.cfg));
    };
  });

  auto* equilibria = app.add_subcommand("equilibria", "equilibrium points as JSON");
  common.attach(equilibria, "json", false);
  equilibria->callback([&] {
    action = [&] {
      const SystemParams p = common.params.get();
      ReportDocument doc{kSchemaVersion, "equilibria", echo_common(common, false), Json::object(), {}};
      Json list = Json::array();
      for (const auto& e : find_equilibria(p)) {
        Json j = to_json(e);
        j["residual"] = norm(vector_field(e.location, p));
        list.push_back(j);
      }
      doc.results["equilibria"] = list;
      doc.warnings.push_back("every point (0, y, 0) is also an equilibrium (line x = z = 0)");
      result = render(doc);
    };
  });

  auto* stability = app.add_subcommand("stability", "Jacobian eigenvalues and classification at each equilibrium");
  common.attach(stability, "json", false);
  stability->callback([&] {
    action = [&] {
      const SystemParams p = common.params.get();
      ReportDocument doc{kSchemaVersion, "stability", echo_common(common, false), Json::object(), {}};
      Json list = Json::array();
      for (const auto& e : find_equilibria(p)) list.push_back(to_json(classify_stability(e, p)));
      doc.results["reports"] = list;
      doc.results["divergence"] = divergence(p);
      result = render(doc);
    };
  });

  auto* lyapunov = app.add_subcommand("lyapunov", "Lyapunov spectrum (Benettin) and Kaplan-Yorke dimension");
  common.attach(lyapunov, "json", true);
  benettin.attach(lyapunov, true);
  lyapunov->callback([&] {
    action = [&] {
      const SystemParams p = common.params.get();
      const LyapunovSpectrum l = lyapunov_spectrum(p, parse_state(common.init), benettin.cfg);
      ReportDocument doc{kSchemaVersion, "lyapunov", echo_common(common, true), to_json(l),
                         lyapunov_warnings(l, p)};
      doc.inputs["settings"] = to_json(benettin.cfg);
      doc.results["divergence"] = divergence(p);
      result = render(doc);
    };
  });

  auto* sweep = app.add_subcommand("sweep", "attractor statistics and largest exponent across beta");
  common.attach(sweep, "json", true);
  sweep_sim.attach(sweep);
  benettin.attach(sweep, false);
  sweep->add_option("--betas", betas, "comma-separated beta values")->capture_default_str();
  sweep->callback([&] {
    action = [&] {
      const SystemParams p = common.params.get();
      benettin.cfg.h = sweep_sim.cfg.h;
      const auto bs = parse_list(betas, "--betas");
      const SweepReport r = sweep_beta(p, bs, sweep_sim.cfg, benettin.cfg, parse_state(common.init));
      ReportDocument doc{kSchemaVersion, "sweep", echo_common(common, true), to_json(r), {}};
      doc.inputs["betas"] = bs;
      doc.inputs["sim"] = to_json(sweep_sim.cfg);
      doc.inputs["benettin"] = to_json(benettin.cfg);
      for (const auto& c : r.cells) {
        if (c.error) doc.warnings.push_back("beta=" + format_double(c.beta) + ": " + *c.error);
      }
      result = render(doc);
    };
  });

  auto* contraction = app.add_subcommand("contraction", "measured phase-volume contraction rate vs divergence");
  common.attach(contraction, "json", true);
  contraction->add_option("--t", contraction_t, "propagation time")->capture_default_str();
  contraction->add_option("--h", contraction_h, "step size")->capture_default_str();
  contraction->callback([&] {
    action = [&] {
      const SystemParams p = common.params.get();
      const auto c = volume_contraction_check(p, parse_state(common.init), contraction_t, contraction_h);
      ReportDocument doc{kSchemaVersion, "contraction", echo_common(common, true), to_json(c), {}};
      doc.inputs["t"] = contraction_t;
      doc.inputs["h"] = contraction_h;
      result = render(doc);
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    action();
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    app.exit(e, err, err);
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }

  if (common.out_path == "-") {
    out << result;
    out.flush();
    return out ? kExitOk : kExitIo;
  }
  std::ofstream file(common.out_path, std::ios::binary);
  file << result;
  if (!file) {
    err << "error: cannot write " << common.out_path << '\n';
    return kExitIo;
  }
  return kExitOk;
}

}  // namespace qlorenz
