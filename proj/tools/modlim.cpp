// modlim: command-line front end.
//
// Exit codes: 0 success, 1 I/O or parse failure, 2 invalid domain or
// quadruple, 3 solver failure or unmet acceptance bound, 4 quadrature
// failure, 64 usage.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "modlim/analytic.hpp"
#include "modlim/discrete.hpp"
#include "modlim/domain.hpp"
#include "modlim/domain_io.hpp"
#include "modlim/error.hpp"
#include "modlim/harness.hpp"
#include "modlim/report.hpp"
#include "modlim/vertical.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace modlim;
using report::fmt;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitDomain = 2;
constexpr int kExitSolver = 3;
constexpr int kExitQuadrature = 4;
constexpr int kExitUsage = 64;

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::kIo:
    case Errc::kParse:
      return kExitIo;
    case Errc::kNotLsc:
    case Errc::kInfiniteArea:
    case Errc::kNonPositive:
    case Errc::kUnboundedInterval:
    case Errc::kMalformedSpec:
    case Errc::kInvalidQuadruple:
    case Errc::kDegenerateStrip:
    case Errc::kUnsupportedKind:
      return kExitDomain;
    case Errc::kResolutionTooCoarse:
    case Errc::kDisconnected:
    case Errc::kIterationLimit:
    case Errc::kInfeasibleEta:
    case Errc::kScheduleTooCoarse:
    case Errc::kEmptyFamily:
      return kExitSolver;
    case Errc::kQuadratureFailure:
      return kExitQuadrature;
    case Errc::kOutOfRange:
    case Errc::kDegenerateQuadruple:
    case Errc::kInvalidArgument:
      return kExitUsage;
  }
  return kExitUsage;
}

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string joined_command(int argc, char** argv) {
  std::string s;
  for (int i = 1; i < argc; ++i) {
    if (i > 1) s += ' ';
    s += argv[i];
  }
  return s;
}

void write_manifest(const fs::path& dir, const std::string& command, const json& config,
                    std::uint64_t seed) {
  io::write_file(dir / "manifest.json", report::manifest(command, config, seed).dump(2) + "\n");
}

domain::BoundaryQuadruple quadruple_or_full(const domain::GraphDomain& d,
                                            const std::optional<std::string>& text) {
  if (!text) return domain::full_arcs(d);
  auto q = io::parse_quadruple(*text);
  domain::validate_quadruple(d, q);
  return q;
}

double hull_min(const domain::GraphDomain& d, const domain::BoundaryQuadruple& q) {
  const double lo = std::min(q.a.x, q.d.x), hi = std::max(q.b.x, q.c.x);
  return d.boundary().min_on(lo, hi);
}

discrete::SolveOptions solve_options(const io::ExperimentConfig& c) {
  discrete::SolveOptions o;
  o.tol = c.tol;
  o.max_iter = c.max_iter;
  o.seed = c.seed;
  return o;
}

// ---------------------------------------------------------------------------

int cmd_domain_validate(const std::string& path) {
  const auto d = io::load_domain(path);
  const auto& f = d.boundary();
  std::cout << "valid yes\n"
            << "kind " << domain::kind_name(f.kind()) << "\n"
            << "interval " << fmt(f.interval().lo) << " " << fmt(f.interval().hi) << "\n"
            << "area " << fmt(d.area()) << "\n"
            << "min " << fmt(f.min_value()) << "\n"
            << "lsc yes\n";
  return kExitOk;
}

struct ModulusArgs {
  std::vector<std::string> inputs;
  std::string mode = "vertical";
  std::optional<std::string> quad;
  std::optional<double> h;
  std::optional<double> eta;
  double tol = 1e-3;
  std::uint64_t seed = 1;
  int max_iter = 2000;
  std::optional<std::string> dump_density;
  std::optional<std::string> out;
};

int cmd_modulus(const ModulusArgs& a, const std::string& command) {
  std::ostringstream text;
  json config = {{"mode", a.mode}};
  if (a.mode == "analytic-quad") {
    std::vector<double> w;
    for (const auto& s : a.inputs) {
      try {
        std::size_t used = 0;
        w.push_back(std::stod(s, &used));
        if (used != s.size()) throw std::invalid_argument(s);
      } catch (const std::exception&) {
        throw UsageError("analytic-quad takes real points, got '" + s + "'");
      }
    }
    double value;
    if (w.size() == 3) {
      value = analytic::quad_modulus(analytic::make_triple(w[0], w[1], w[2]));
    } else if (w.size() == 4) {
      value = analytic::quad_modulus_real({w[0], w[1], w[2], w[3]});
    } else {
      throw UsageError("analytic-quad takes three points w1 w2 w3 (or four)");
    }
    config["points"] = w;
    text << "value " << fmt(value) << "\n";
  } else {
    if (a.inputs.size() != 1) throw UsageError(a.mode + " mode takes one domain file");
    const auto d = io::load_domain(a.inputs[0]);
    const auto q = quadruple_or_full(d, a.quad);
    config["domain"] = io::domain_to_json(d.boundary());
    config["quadruple"] = io::format_quadruple(q);
    if (a.mode == "vertical") {
      const auto v = vertical::vertical_family(d, q);
      text << "value " << fmt(vertical::modulus_vertical(v)) << "\n";
    } else if (a.mode == "discrete") {
      const double h = a.h ? *a.h : hull_min(d, q) / 50.0;
      discrete::SolveOptions o;
      o.tol = a.tol;
      o.seed = a.seed;
      o.max_iter = a.max_iter;
      o.eta = a.eta;
      config["h"] = h;
      config["tol"] = a.tol;
      config["max_iter"] = a.max_iter;
      if (a.eta) config["eta"] = *a.eta;
      const auto g = discrete::rasterize(d, h, q);
      const auto e = discrete::solve_modulus(g, o);
      text << "value " << fmt(e.value) << "\n"
           << "lower_bound " << fmt(e.lower_bound) << "\n"
           << "upper_bound " << fmt(e.upper_bound) << "\n"
           << "gap " << fmt(e.gap) << "\n"
           << "h " << fmt(h) << "\n"
           << "nodes " << g.node_count() << "\n"
           << "iterations " << e.iterations << "\n"
           << "converged " << (e.converged ? "yes" : "no") << "\n";
      if (a.dump_density) io::write_file(*a.dump_density, discrete::density_csv(g, e.density));
      if (a.out) {
        io::write_file(fs::path(*a.out) / "density.csv", discrete::density_csv(g, e.density));
        io::write_file(fs::path(*a.out) / "certificate.txt", discrete::certificate_text(e));
      }
    } else {
      throw UsageError("unknown mode '" + a.mode + "' (vertical, discrete, analytic-quad)");
    }
  }
  std::cout << text.str();
  if (a.out) {
    io::write_file(fs::path(*a.out) / "modulus.txt", text.str());
    write_manifest(*a.out, command, config, a.seed);
  }
  return kExitOk;
}

struct ConfigArgs {
  std::string config;
  std::optional<std::string> out;
  std::optional<double> h;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
};

struct Experiment {
  io::ExperimentConfig cfg;
  domain::GraphDomain d;
  domain::BoundaryQuadruple q;
  fs::path out;
};

Experiment load_experiment(const ConfigArgs& a) {
  auto cfg = io::load_config(a.config);
  if (a.h) cfg.h = *a.h;
  if (a.tol) cfg.tol = *a.tol;
  if (a.seed) cfg.seed = *a.seed;
  if (a.out) cfg.out = *a.out;
  const auto doc = io::domain_document_from_json(cfg.domain);
  auto d = domain::build_graph_domain(doc.spec, doc.interval);
  const auto q = quadruple_or_full(d, cfg.quadruple);
  const fs::path out = cfg.out ? fs::path(*cfg.out) : fs::path(".");
  return {std::move(cfg), std::move(d), q, out};
}

harness::HSchedule schedule_for(const Experiment& x) {
  harness::HSchedule s;
  s.cells_per_min_height = x.cfg.cells_per_min_height;
  if (x.cfg.h) {
    for (double eps : x.cfg.eps_list) {
      s.h.push_back(std::min(*x.cfg.h, harness::coupled_h(x.d, x.q, eps, s.cells_per_min_height)));
    }
  }
  return s;
}

double eta_cell(const Experiment& x) { return x.cfg.h ? *x.cfg.h : hull_min(x.d, x.q) / 50.0; }

std::string sweep_chart(const harness::SweepReport& r) {
  report::Series s{"eps * mod", {}, {}};
  for (const auto& row : r.rows) {
    s.x.push_back(row.eps);
    s.y.push_back(row.eps_times_modulus);
  }
  return report::svg_line_chart("Stretched modulus (target dashed)", "eps", "eps * mod", {s}, true,
                                r.target);
}

std::string eta_chart(const harness::EtaReport& r) {
  report::Series s{"restricted mod", {}, {}}, b{"partition bound", {}, {}};
  for (const auto& row : r.rows) {
    s.x.push_back(row.eta);
    s.y.push_back(row.restricted_modulus);
    b.x.push_back(row.eta);
    b.y.push_back(row.riemann_bound);
  }
  return report::svg_line_chart("Restricted modulus", "eta", "mod", {s, b}, true);
}

int cmd_sweep_eps(const ConfigArgs& a, const std::string& command) {
  const auto x = load_experiment(a);
  if (x.cfg.eps_list.size() < 3) throw UsageError("extrapolation needs at least 3 eps values");
  const auto r = harness::epsilon_sweep(x.d, x.q, x.cfg.eps_list, schedule_for(x), solve_options(x.cfg));
  const std::string summary = report::sweep_summary(r, x.cfg.bound);
  io::write_file(x.out / "sweep_eps.csv", report::sweep_csv(r));
  io::write_file(x.out / "sweep_eps_summary.txt", summary);
  io::write_file(x.out / "sweep_eps.svg", sweep_chart(r));
  write_manifest(x.out, command, x.cfg.to_json(), x.cfg.seed);
  std::cout << summary;
  if (!r.complete) return kExitSolver;
  return r.relative_error <= x.cfg.bound ? kExitOk : kExitSolver;
}

int cmd_sweep_eta(const ConfigArgs& a, const std::string& command) {
  const auto x = load_experiment(a);
  if (x.cfg.eta_list.empty()) throw UsageError("config has no eta_list");
  const auto r = harness::eta_sweep(x.d, x.q, x.cfg.eta_list, eta_cell(x), solve_options(x.cfg));
  const std::string summary = report::eta_summary(r);
  io::write_file(x.out / "sweep_eta.csv", report::eta_csv(r));
  io::write_file(x.out / "sweep_eta_summary.txt", summary);
  io::write_file(x.out / "sweep_eta.svg", eta_chart(r));
  write_manifest(x.out, command, x.cfg.to_json(), x.cfg.seed);
  std::cout << summary;
  return r.monotone && r.below_riemann ? kExitOk : kExitSolver;
}

int cmd_sandwich(const ConfigArgs& a, const std::string& command) {
  const auto x = load_experiment(a);
  if (x.cfg.eps_list.size() < 3) throw UsageError("extrapolation needs at least 3 eps values");
  if (x.cfg.eta_list.empty()) throw UsageError("config has no eta_list");
  harness::HSchedule s = schedule_for(x);
  const auto v = harness::sandwich_check(x.d, x.q, x.cfg.eps_list, x.cfg.eta_list, eta_cell(x), s,
                                         solve_options(x.cfg));
  const std::string summary = report::sandwich_summary(v);
  io::write_file(x.out / "sweep_eps.csv", report::sweep_csv(v.sweep));
  io::write_file(x.out / "sweep_eta.csv", report::eta_csv(v.eta));
  io::write_file(x.out / "sandwich_summary.txt", summary);
  io::write_file(x.out / "sweep_eps.svg", sweep_chart(v.sweep));
  io::write_file(x.out / "sweep_eta.svg", eta_chart(v.eta));
  write_manifest(x.out, command, x.cfg.to_json(), x.cfg.seed);
  std::cout << summary;
  return v.holds() ? kExitOk : kExitSolver;
}

// Rows with w2 >= 0.9 are in the asymptotic regime and carry the assertions.
constexpr double kAsymptoticFrom = 0.9;

int cmd_asymptotics(const std::vector<double>& w2s, const std::optional<std::string>& out,
                    const std::string& command) {
  if (w2s.empty()) throw UsageError("asymptotics needs at least one w2 value");
  for (std::size_t i = 0; i < w2s.size(); ++i) {
    if (!(w2s[i] > 0.0 && w2s[i] < 1.0)) {
      raise(Errc::kOutOfRange, "w2 = " + fmt(w2s[i]) + " must lie in (0, 1)");
    }
    if (i && !(w2s[i] > w2s[i - 1])) throw UsageError("w2 values must be increasing");
  }
  report::CsvWriter w({"w2", "modulus", "liouville_term", "defect", "asymptotic"});
  bool ok = true;
  double prev = INFINITY, last = INFINITY;
  for (double w2 : w2s) {
    const auto t = analytic::make_triple(0.0, w2, 1.0);
    const double m = analytic::quad_modulus(t);
    const double term = analytic::liouville_mass_halfplane(t).value / std::numbers::pi + 2.0 / std::numbers::pi * std::log(4.0);
    const double defect = analytic::asymptotic_defect(t);
    const bool asym = w2 >= kAsymptoticFrom;
    if (asym) {
      ok &= std::abs(defect) < prev;
      prev = last = std::abs(defect);
    }
    w.row({fmt(w2), fmt(m), fmt(term), fmt(defect), asym ? "yes" : "no"});
  }
  const bool any = std::isfinite(last);
  ok &= !any || last < 0.01;
  std::cout << w.str();
  std::cout << "asymptotic_rows_checked " << (any ? "yes" : "no") << "\n"
            << "defects_decreasing_and_small " << (ok ? "yes" : "no") << "\n";
  if (out) {
    io::write_file(fs::path(*out) / "asymptotics.csv", w.str());
    write_manifest(*out, command, {{"w2_list", w2s}}, 0);
  }
  return ok ? kExitOk : kExitSolver;
}

int cmd_lsc(const std::string& path, std::vector<double> n_list, const std::optional<std::string>& quad,
            const std::optional<std::string>& out, const std::string& command) {
  const auto d = io::load_domain(path);
  std::optional<domain::Interval> overlap;
  if (quad) {
    overlap = domain::overlap_interval(d, quadruple_or_full(d, quad));
    if (!overlap) raise(Errc::kInvalidQuadruple, "quadruple has an empty overlap interval");
  }
  for (std::size_t i = 1; i < n_list.size(); ++i) {
    if (!(n_list[i] > n_list[i - 1])) throw UsageError("--n values must be increasing");
  }
  const auto r = harness::lsc_approximation(d.boundary(), n_list, overlap);
  const std::string csv = report::lsc_csv(r);
  std::cout << csv << "target " << fmt(r.target) << "\n"
            << "floor " << fmt(r.floor) << "\n"
            << "monotone " << (r.monotone ? "yes" : "no") << "\n"
            << "errors_decreasing " << (r.errors_decreasing ? "yes" : "no") << "\n";
  if (out) {
    const fs::path dir(*out);
    io::write_file(dir / "lsc.csv", csv);
    report::Series s{"error", {}, {}};
    for (const auto& row : r.rows) {
      s.x.push_back(row.n);
      s.y.push_back(row.error);
    }
    io::write_file(dir / "lsc.svg",
                   report::svg_line_chart("Reciprocal integral error", "n", "error", {s}, true));
    json cfg = {{"domain", io::domain_to_json(d.boundary())}, {"n_list", n_list}};
    if (quad) cfg["quadruple"] = *quad;
    write_manifest(dir, command, cfg, 0);
  }
  return r.monotone && r.errors_decreasing ? kExitOk : kExitSolver;
}

int cmd_analytic(const std::string& what, const std::vector<double>& args) {
  if (what == "mu") {
    if (args.size() != 1) throw UsageError("analytic mu takes one value r");
    std::cout << fmt(analytic::grotzsch_mu(args[0])) << "\n";
  } else if (what == "quad" || what == "liouville" || what == "defect") {
    if (args.size() != 3) throw UsageError("analytic " + what + " takes w1 w2 w3");
    const auto t = analytic::make_triple(args[0], args[1], args[2]);
    const double v = what == "quad"        ? analytic::quad_modulus(t)
                     : what == "liouville" ? analytic::liouville_mass_halfplane(t).value
                                           : analytic::asymptotic_defect(t);
    std::cout << fmt(v) << "\n";
  } else {
    throw UsageError("unknown analytic quantity '" + what + "' (mu, quad, liouville, defect)");
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"modlim: conformal moduli of curve families in graph domains"};
  // -h is taken by the cell size option.
  app.set_help_flag("--help", "print help");
  app.require_subcommand(1);
  app.set_version_flag("--version", MODLIM_VERSION);

  auto* dom = app.add_subcommand("domain", "domain spec utilities");
  dom->require_subcommand(1);
  std::string validate_path;
  auto* validate = dom->add_subcommand("validate", "check a domain spec and print its area");
  validate->add_option("path", validate_path, "domain spec (JSON)")->required();

  ModulusArgs ma;
  auto* mod = app.add_subcommand("modulus", "modulus of one curve family");
  mod->add_option("inputs", ma.inputs, "domain file, or points for analytic-quad")->required();
  mod->add_option("--mode", ma.mode, "vertical, discrete or analytic-quad")
      ->check(CLI::IsMember({"vertical", "discrete", "analytic-quad"}));
  mod->add_option("--quad", ma.quad, "prime ends a,b,c,d (default: full arcs)");
  mod->add_option("--h", ma.h, "cell size for discrete mode")->check(CLI::PositiveNumber);
  mod->add_option("--eta", ma.eta, "horizontal-extent cap for discrete mode")->check(CLI::PositiveNumber);
  mod->add_option("--tol", ma.tol, "relative duality gap")->check(CLI::PositiveNumber);
  mod->add_option("--seed", ma.seed, "solver seed");
  mod->add_option("--max-iter", ma.max_iter, "outer iteration cap")->check(CLI::PositiveNumber);
  mod->add_option("--dump-density", ma.dump_density, "write the density as CSV");
  mod->add_option("--out", ma.out, "output directory");

  ConfigArgs eps_args, eta_args, sand_args;
  auto add_config_flags = [](CLI::App* sub, ConfigArgs& ca) {
    sub->add_option("config", ca.config, "experiment config (JSON)")->required();
    sub->add_option("--out", ca.out, "output directory");
    sub->add_option("--h", ca.h, "cell size (cap for eps sweeps)")->check(CLI::PositiveNumber);
    sub->add_option("--tol", ca.tol, "relative duality gap")->check(CLI::PositiveNumber);
    sub->add_option("--seed", ca.seed, "solver seed");
  };
  auto* sweep = app.add_subcommand("sweep", "eps or eta sweeps");
  sweep->require_subcommand(1);
  auto* sweep_eps = sweep->add_subcommand("eps", "vertical-stretch sweep with extrapolation");
  add_config_flags(sweep_eps, eps_args);
  auto* sweep_eta = sweep->add_subcommand("eta", "horizontal-extent sweep");
  add_config_flags(sweep_eta, eta_args);
  auto* sand = app.add_subcommand("sandwich", "vertical <= eps limit <= eta limit");
  add_config_flags(sand, sand_args);

  std::vector<double> w2s;
  std::optional<std::string> asym_out;
  auto* asym = app.add_subcommand("asymptotics", "defect table for triples (0, w2, 1)");
  asym->add_option("w2", w2s, "values in (0, 1), increasing");
  asym->add_option("--out", asym_out, "output directory");

  std::string lsc_path;
  std::vector<double> n_list = {4, 16, 64};
  std::optional<std::string> lsc_quad, lsc_out;
  auto* lsc = app.add_subcommand("lsc-approx", "continuous minorants of a step boundary");
  lsc->add_option("path", lsc_path, "domain spec (JSON)")->required();
  lsc->add_option("--n", n_list, "slopes, increasing")->delimiter(',');
  lsc->add_option("--quad", lsc_quad, "prime ends; the floor is min f on their overlap");
  lsc->add_option("--out", lsc_out, "output directory");

  std::string what;
  std::vector<double> an_args;
  auto* an = app.add_subcommand("analytic", "closed-form quantities");
  an->add_option("quantity", what, "mu, quad, liouville or defect")->required();
  an->add_option("args", an_args, "arguments")->allow_extra_args();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  const std::string command = joined_command(argc, argv);
  try {
    if (*validate) return cmd_domain_validate(validate_path);
    if (*mod) return cmd_modulus(ma, command);
    if (*sweep_eps) return cmd_sweep_eps(eps_args, command);
    if (*sweep_eta) return cmd_sweep_eta(eta_args, command);
    if (*sand) return cmd_sandwich(sand_args, command);
    if (*asym) return cmd_asymptotics(w2s, asym_out, command);
    if (*lsc) return cmd_lsc(lsc_path, n_list, lsc_quad, lsc_out, command);
    if (*an) return cmd_analytic(what, an_args);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << errc_name(e.code()) << ": " << e.what() << "\n";
    return exit_code_for(e.code());
  }
  return kExitUsage;
}
