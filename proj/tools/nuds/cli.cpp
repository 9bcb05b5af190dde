#include "cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "nuds/dynamics.hpp"
#include "nuds/error.hpp"
#include "nuds/io.hpp"

namespace nuds::cli {

namespace {

constexpr int kTail = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << text;
}

void apply_overrides(Tolerances& tol, const std::vector<std::string>& overrides) {
  for (const auto& kv : overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ConfigError("--tol-override expects KEY=VAL, got " + kv);
    double value = 0.0;
    try {
      std::size_t used = 0;
      value = std::stod(kv.substr(eq + 1), &used);
      if (used != kv.size() - eq - 1) throw std::invalid_argument(kv);
    } catch (const std::logic_error&) {
      throw ConfigError("--tol-override value is not a number: " + kv);
    }
    tol.set(kv.substr(0, eq), value);
  }
}

LambdaIndex parse_at(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw ConfigError("--at expects m,eps");
  try {
    const LambdaIndex idx{std::stoll(text.substr(0, comma)), std::stoi(text.substr(comma + 1))};
    if (idx.eps != 0 && idx.eps != 1) throw ConfigError("--at: eps must be 0 or 1");
    return idx;
  } catch (const std::logic_error&) {
    throw ConfigError("--at expects integers m,eps");
  }
}

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

Check make_check(std::string name, bool ok, const std::string& detail) {
  return Check{std::move(name), ok, detail};
}

std::string num(double x) {
  std::ostringstream os;
  os << std::setprecision(6) << x;
  return os.str();
}

Check bounds_check(const std::string& name, const FrameBounds& got,
                   const std::optional<FrameBounds>& want) {
  if (!want) return make_check(name, true, "no expectation");
  const bool ok = near(got.alpha, want->alpha, 1e-8) && near(got.beta, want->beta, 1e-8);
  return make_check(name, ok,
                    "alpha=" + num(got.alpha) + " beta=" + num(got.beta) + " expected (" +
                        num(want->alpha) + ", " + num(want->beta) + ")");
}

Check rho_check(double rho, const std::optional<double>& want) {
  if (!want) return make_check("spectral radius", true, "no expectation");
  return make_check("spectral radius", near(rho, *want, 1e-9),
                    "rho=" + num(rho) + " expected " + num(*want));
}

void demo_diagonal(const Scenario& sc, const Tolerances& tol, DemoOutcome& out) {
  const SystemSpec& s = sc.spec;
  const DataMatrix d = data_matrix(simulate(s), s.g);
  const Certificate cert = recovery_certificate_full(s.g, tol);
  out.checks.push_back(make_check("sampling family is a frame", cert.recoverable == sc.expect.should_recover_finite,
                                  "alpha=" + num(cert.bounds.alpha)));
  out.checks.push_back(bounds_check("frame bounds", cert.bounds, sc.expect.expected_bounds));
  const double rho = spectral_radius(s.A);
  out.checks.push_back(rho_check(rho, sc.expect.expected_rho));
  const auto rec = FiniteReconstructor::with_canonical_dual(s.A, s.g, tol);
  for (const LambdaIndex at : {LambdaIndex{0, 0}, LambdaIndex{0, 1}, LambdaIndex{-1, 1}}) {
    const FiniteRecovery r = rec.recover(d, at);
    const double err = (r.w_hat - s.w).norm();
    out.checks.push_back(make_check("finite recovery case " + case_tag(r.branch), err <= 1e-10,
                                    "error=" + num(err)));
  }
  const FiniteRecovery r0 = rec.recover(d, {0, 0});
  out.report.w_hat = r0.w_hat;
  out.report.abs_error = (r0.w_hat - s.w).norm();
  out.report.residual = rec.consistency(d, {0, 0});
  out.report.diagnostics = {cert.bounds.alpha, cert.bounds.beta, rho,
                            bs_membership(d, kTail, tol).tail_gap, case_tag(r0.branch)};
}

void demo_onb(const Scenario& sc, const Tolerances& tol, DemoOutcome& out) {
  const SystemSpec& s = sc.spec;
  const DataMatrix d = data_matrix(simulate(s), s.g);
  const LimitEstimate lim = limit_operator(d, s.g.vectors(), kTail, tol);
  const double ratio = lim.value.norm() / sup_row_norm(d);
  if (sc.expect.expected_norm_ratio) {
    out.checks.push_back(make_check("limit operator norm ratio",
                                    near(ratio, *sc.expect.expected_norm_ratio, 1e-8),
                                    "ratio=" + num(ratio)));
  }
  const double rho = spectral_radius(s.A);
  out.checks.push_back(rho_check(rho, sc.expect.expected_rho));
  const FrameBounds fb = frame_bounds(s.g, tol);
  out.checks.push_back(bounds_check("frame bounds", fb, sc.expect.expected_bounds));
  const StationaryMap smap = stationary_map_from_A(s.A, s.g, s.W_basis, tol);
  out.report = reconstruct_infinite(d, smap, kTail, tol);
  const double err = (out.report.w_hat - s.w).norm();
  out.report.abs_error = err;
  out.report.diagnostics.rho = rho;
  out.checks.push_back(make_check("infinite recovery", (err <= 1e-10) == sc.expect.should_recover_infinite,
                                  "error=" + num(err)));
  const FiniteRecovery fr = FiniteReconstructor::with_canonical_dual(s.A, s.g, tol).recover(d, {0, 0});
  out.checks.push_back(make_check("finite recovery", ((fr.w_hat - s.w).norm() <= 1e-10) ==
                                                         sc.expect.should_recover_finite,
                                  "error=" + num((fr.w_hat - s.w).norm())));
}

void demo_counterexample(const Scenario& sc, const Tolerances& tol, DemoOutcome& out) {
  const SystemSpec& s = sc.spec;
  const DataMatrix d = data_matrix(simulate(s), s.g);
  double max_meas = 0.0;
  for (Eigen::Index r = 0; r < d.rows(); ++r) {
    out.measurements.push_back(d.values()(r, 0));
    max_meas = std::max(max_meas, std::abs(d.values()(r, 0)));
  }
  out.checks.push_back(make_check("all window samples vanish", max_meas <= 1e-8,
                                  std::to_string(d.rows()) + " samples, max |<x, g>| = " + num(max_meas)));
  out.checks.push_back(make_check("source is nonzero", s.w.norm() >= 1.0, "||w|| = " + num(s.w.norm())));
  const FrameBounds sub = subspace_condition(s.A, s.g, s.W_basis, tol);
  out.checks.push_back(make_check("subspace condition holds", sub.is_frame(tol.frame),
                                  "alpha=" + num(sub.alpha) + " (necessary-only)"));
  out.checks.push_back(bounds_check("subspace condition bounds", sub, sc.expect.expected_bounds));
  // The zero system (x0 = x_-2 = 0, w = 0) yields the zero data matrix too, so
  // no map on window data can return both w and 0.
  const bool indistinguishable = max_meas <= 1e-8;
  out.checks.push_back(make_check("finite recovery impossible",
                                  indistinguishable == !sc.expect.should_recover_finite,
                                  "data of (x0, x_-2, w) matches data of (0, 0, 0)"));
  const Certificate cert = recovery_certificate_full(s.g, tol);
  out.report.w_hat = Vec::Zero(s.dim);
  out.report.abs_error = s.w.norm();
  out.report.residual = max_meas;
  out.report.diagnostics = {sub.alpha, sub.beta, spectral_radius(s.A),
                            bs_membership(d, kTail, tol).tail_gap, std::nullopt};
  out.checks.push_back(make_check("full-space certificate", cert.recoverable == sc.expect.should_recover_finite,
                                  "alpha=" + num(cert.bounds.alpha)));
}

void demo_generalized(const Scenario& sc, const Tolerances& tol, DemoOutcome& out) {
  const SystemSpec& s = sc.spec;
  const StateTrajectory traj = simulate(s);
  const DataMatrix d = data_matrix(traj, s.g);
  const StationaryMap smap = StationaryMap::from_operator(s.W_basis, *sc.stationary, s.g);
  GeneralizedSystem sys;
  sys.W_basis = s.W_basis;
  sys.stationary = *sc.stationary;
  sys.trajectory = [&s](const Vec& x0, const Vec& xm2, const Vec& w) {
    return simulate(s.with_states(x0, xm2, w));
  };
  const GeneralizedCheck gc = check_generalized(sys, s.w, s.x0, s.xm2, tol);
  out.checks.push_back(make_check("stationary pair", gc.stationary_ok,
                                  "error=" + num(gc.stationarity_error)));
  const double rho = spectral_radius(s.A);
  out.checks.push_back(rho_check(rho, sc.expect.expected_rho));
  const FrameBounds sb = frame_bounds(smap.adjoint_family, tol);
  out.checks.push_back(bounds_check("S* g bounds on W", sb, sc.expect.expected_bounds));
  out.report = reconstruct_infinite(d, smap, kTail, tol);
  const double err = (out.report.w_hat - s.w).norm();
  out.report.abs_error = err;
  out.report.diagnostics.rho = rho;
  out.checks.push_back(make_check("infinite recovery", (err <= 1e-10) == sc.expect.should_recover_infinite,
                                  "error=" + num(err)));
  const FiniteRecovery fr = FiniteReconstructor::with_canonical_dual(s.A, s.g, tol).recover(d, {0, 0});
  const double ferr = (fr.w_hat - s.w).norm();
  out.checks.push_back(make_check("finite recovery", (ferr <= 1e-10) == sc.expect.should_recover_finite,
                                  "error=" + num(ferr)));
}

void demo_quarter(const Scenario& sc, const Tolerances& tol, DemoOutcome& out) {
  const SystemSpec& s = sc.spec;
  const DataMatrix d = data_matrix(simulate(s), s.g);
  const double rho = spectral_radius(s.A);
  out.checks.push_back(rho_check(rho, sc.expect.expected_rho));
  const StationaryMap smap = stationary_map_from_A(s.A, s.g, s.W_basis, tol);
  out.checks.push_back(bounds_check("S* g bounds on W", frame_bounds(smap.adjoint_family, tol),
                                    sc.expect.expected_bounds));
  out.checks.push_back(bounds_check("subspace condition bounds",
                                    subspace_condition(s.A, s.g, s.W_basis, tol),
                                    sc.expect.expected_bounds));
  out.report = reconstruct_infinite(d, smap, kTail, tol);
  const double err = (out.report.w_hat - s.w).norm();
  out.report.abs_error = err;
  out.report.diagnostics.rho = rho;
  out.checks.push_back(make_check("infinite recovery", (err <= 1e-6) == sc.expect.should_recover_infinite,
                                  "error=" + num(err)));
}

void dispatch_demo(const Scenario& scenario, const Tolerances& tol, DemoOutcome& out) {
  switch (scenario.id) {
    case ScenarioId::DiagonalFinite:
      demo_diagonal(scenario, tol, out);
      break;
    case ScenarioId::OnbLimit:
      demo_onb(scenario, tol, out);
      break;
    case ScenarioId::VandermondeCounterexample:
      demo_counterexample(scenario, tol, out);
      break;
    case ScenarioId::GeneralizedCorrected:
      demo_generalized(scenario, tol, out);
      break;
    case ScenarioId::QuarterContraction:
      demo_quarter(scenario, tol, out);
      break;
  }
}

std::int64_t default_K(ScenarioId id) {
  switch (id) {
    case ScenarioId::QuarterContraction:
      return 20;
    case ScenarioId::VandermondeCounterexample:
      return 3;
    default:
      return 4;
  }
}

struct Options {
  std::vector<std::string> tol_overrides;
  std::string config;
  std::string out_dir;
  std::string mode = "finite";
  std::string at = "0,0";
  std::string scenario;
  std::int64_t K = 0;
  std::int64_t N = 2;
  std::int64_t r = 1;
  bool emit_config = false;
};

Config load_config(const Options& o) {
  if (o.config.empty()) throw ConfigError("no config file given");
  Config cfg = parse_config(read_file(o.config));
  apply_overrides(cfg.tolerances, o.tol_overrides);
  return cfg;
}

int cmd_simulate(const Options& o, std::ostream& out) {
  const Config cfg = load_config(o);
  const StateTrajectory traj = simulate(cfg.spec);
  const DataMatrix d = data_matrix(traj, cfg.spec.g);
  const std::filesystem::path dir = o.out_dir.empty() ? "." : o.out_dir;
  write_file(dir / "trajectory.csv", trajectory_csv(traj, cfg.spec.params));
  write_file(dir / "data_matrix.csv", data_matrix_csv(d, cfg.spec.params));
  out << "simulated " << traj.size() << " states, recurrence residual "
      << recurrence_residual(traj, cfg.spec.A, cfg.spec.w) << "\n";
  return kOk;
}

void emit_report(const Options& o, const RecoveryReport& report, std::ostream& out) {
  const std::string text = report_to_json(report);
  if (o.out_dir.empty()) {
    out << text << "\n";
  } else {
    write_file(std::filesystem::path(o.out_dir) / "report.json", text);
  }
}

int cmd_recover(const Options& o, std::ostream& out, std::ostream& err) {
  const Config cfg = load_config(o);
  const SystemSpec& s = cfg.spec;
  const Tolerances& tol = cfg.tolerances;
  const DataMatrix d = data_matrix(simulate(s), s.g);
  RecoveryReport report;
  const double rho = spectral_radius(s.A);

  if (o.mode == "finite") {
    const Certificate cert = recovery_certificate_full(s.g, tol);
    if (!cert.recoverable) {
      report.w_hat = Vec::Zero(s.dim);
      report.diagnostics = {cert.bounds.alpha, cert.bounds.beta, rho, 0.0, std::nullopt};
      emit_report(o, report, out);
      err << "not stably recoverable: sampling family is not a frame (alpha = "
          << cert.bounds.alpha << ")\n";
      return kCondition;
    }
    const LambdaIndex at = parse_at(o.at);
    const auto rec = FiniteReconstructor::with_canonical_dual(s.A, s.g, tol);
    const FiniteRecovery r = rec.recover(d, at);
    report.w_hat = r.w_hat;
    report.abs_error = (r.w_hat - s.w).norm();
    report.residual = rec.consistency(d, at);
    const double gap = d.rows() >= 2 * kTail ? bs_membership(d, kTail, tol).tail_gap : 0.0;
    report.diagnostics = {cert.bounds.alpha, cert.bounds.beta, rho, gap, case_tag(r.branch)};
    emit_report(o, report, out);
    if (report.residual > tol.residual * std::max(1.0, sup_row_norm(d))) {
      err << "recovery residual " << report.residual << " exceeds tolerance\n";
      return kNumerical;
    }
    return kOk;
  }
  if (o.mode == "infinite") {
    StationaryMap smap;
    if (cfg.stationary) {
      smap = StationaryMap::from_operator(s.W_basis, *cfg.stationary, s.g);
    } else {
      try {
        smap = stationary_map_from_A(s.A, s.g, s.W_basis, tol);
      } catch (const ConditionError& e) {
        err << "not stably recoverable: infinite-sample recovery requires rho(A) < 1 ("
            << e.what() << ")\n";
        return kCondition;
      }
    }
    try {
      report = reconstruct_infinite(d, smap, kTail, tol);
    } catch (const ConditionError& e) {
      err << "not stably recoverable: " << e.what() << "\n";
      return kCondition;
    }
    report.abs_error = (report.w_hat - s.w).norm();
    report.diagnostics.rho = rho;
    emit_report(o, report, out);
    return kOk;
  }
  throw ConfigError("--mode must be finite or infinite");
}

int cmd_check(const Options& o, std::ostream& out) {
  const Config cfg = load_config(o);
  const SystemSpec& s = cfg.spec;
  const Tolerances& tol = cfg.tolerances;
  const bool full_space = s.W_basis.cols() == s.dim;
  auto row = [&out](const std::string& name, const std::string& value, const std::string& verdict) {
    out << std::left << std::setw(30) << name << std::setw(36) << value << verdict << "\n";
  };
  auto bounds = [](const FrameBounds& b) { return "alpha=" + num(b.alpha) + " beta=" + num(b.beta); };

  const FrameBounds gb = frame_bounds(s.g, tol);
  row("g frame bounds", bounds(gb), gb.is_frame(tol.frame) ? "frame" : "not a frame");

  bool subspace_ok = false;
  try {
    const FrameBounds sb = subspace_condition(s.A, s.g, s.W_basis, tol);
    subspace_ok = sb.is_frame(tol.frame);
    row("subspace condition", bounds(sb), subspace_ok ? "pass (necessary condition)" : "fail");
  } catch (const ConditionError&) {
    row("subspace condition", "1 in sigma(A)", "n/a");
  }

  const double rho = spectral_radius(s.A);
  std::optional<StationaryMap> smap;
  if (cfg.stationary) {
    smap = StationaryMap::from_operator(s.W_basis, *cfg.stationary, s.g);
  } else if (rho < 1.0 - tol.rho_margin) {
    smap = stationary_map_from_A(s.A, s.g, s.W_basis, tol);
  }
  if (smap) {
    const FrameBounds ab = frame_bounds(smap->adjoint_family, tol);
    row("S* g family bounds", bounds(ab), ab.is_frame(tol.frame) ? "frame for W" : "not a frame for W");
  } else {
    row("S* g family bounds", "n/a", "requires rho(A) < 1");
  }
  row("rho(A)", num(rho), rho < 1.0 ? "< 1" : ">= 1");

  const DataMatrix d = data_matrix(simulate(s), s.g);
  if (d.rows() >= 2 * kTail) {
    const BsMembership m = bs_membership(d, kTail, tol);
    row("B^s tail gap (probe)", num(m.tail_gap), m.member ? "rows converged" : "rows not converged");
  }
  std::string finite;
  if (gb.is_frame(tol.frame)) {
    finite = "sufficient (g is a frame)";
  } else if (!full_space && subspace_ok) {
    finite = "necessary-only (subspace condition holds, not sufficient)";
  } else {
    finite = "not recoverable";
  }
  row("finite recovery", "", finite);
  return kOk;
}

int cmd_demo(const Options& o, std::ostream& out, std::ostream& err) {
  const auto id = parse_scenario_id(o.scenario);
  if (!id) throw ConfigError("unknown scenario id \"" + o.scenario + "\"");
  const std::int64_t K = o.K > 0 ? o.K : default_K(*id);
  Tolerances tol;
  apply_overrides(tol, o.tol_overrides);
  const Scenario sc = build(*id, SpectralParams(o.N, o.r), K);

  if (o.emit_config) {
    Config cfg = config_from_scenario(sc);
    cfg.tolerances = tol;
    const std::string text = serialize_config(cfg);
    if (o.out_dir.empty()) {
      out << text << "\n";
    } else {
      write_file(std::filesystem::path(o.out_dir) / "config.json", text);
    }
    return kOk;
  }

  const DemoOutcome outcome = run_demo(sc, tol);
  for (const Check& c : outcome.checks) {
    out << (c.passed ? "[ok]   " : "[FAIL] ") << c.name << ": " << c.detail << "\n";
  }
  if (!outcome.measurements.empty()) {
    out << "measurements:";
    for (const Complex& z : outcome.measurements) out << " " << num(std::abs(z));
    out << "\n";
  }
  if (!o.out_dir.empty()) {
    const std::filesystem::path dir(o.out_dir);
    write_file(dir / "report.json", report_to_json(outcome.report));
    if (!outcome.measurements.empty()) {
      std::ostringstream csv;
      csv << std::setprecision(17) << "lambda,re,im\n";
      const auto idx = window(K);
      for (std::size_t k = 0; k < outcome.measurements.size(); ++k) {
        csv << label(idx[k], sc.spec.params) << ',' << outcome.measurements[k].real() << ','
            << outcome.measurements[k].imag() << '\n';
      }
      write_file(dir / "measurements.csv", csv.str());
    }
  }
  if (!outcome.all_passed()) {
    err << "scenario " << o.scenario << ": expectations not met\n";
    return kExpectation;
  }
  return kOk;
}

}  // namespace

bool DemoOutcome::all_passed() const {
  for (const Check& c : checks) {
    if (!c.passed) return false;
  }
  return !checks.empty();
}

DemoOutcome run_demo(const Scenario& scenario, const Tolerances& tol) {
  DemoOutcome out;
  try {
    dispatch_demo(scenario, tol, out);
  } catch (const ConditionError& e) {
    // A failed hypothesis contradicts the expectations record.
    out.checks.push_back(make_check("recovery hypotheses", false, e.what()));
  }
  return out;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"nuds: simulate non-uniform discrete dynamical systems and recover source terms"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--tol-override", o.tol_overrides, "Override a tolerance, KEY=VAL (repeatable)");

  auto* sim = app.add_subcommand("simulate", "Write trajectory and data-matrix CSVs");
  sim->add_option("config,--config", o.config, "Config JSON");
  sim->add_option("-o,--out", o.out_dir, "Output directory");

  auto* rec = app.add_subcommand("recover", "Recover the source term and write a JSON report");
  rec->add_option("config,--config", o.config, "Config JSON");
  rec->add_option("--mode", o.mode, "finite | infinite")->check(CLI::IsMember({"finite", "infinite"}));
  rec->add_option("--at", o.at, "Sample pair start m,eps for finite mode");
  rec->add_option("-o,--out", o.out_dir, "Output directory (report.json); stdout when omitted");

  auto* chk = app.add_subcommand("check", "Print the recoverability conditions of a config");
  chk->add_option("config,--config", o.config, "Config JSON");

  auto* demo = app.add_subcommand("demo", "Build a worked scenario and verify its expectations");
  demo->add_option("scenario", o.scenario, "Scenario id")->required();
  demo->add_option("-K", o.K, "Window parameter");
  demo->add_option("--N", o.N, "Spectral parameter N");
  demo->add_option("--r", o.r, "Spectral parameter r");
  demo->add_option("-o,--out", o.out_dir, "Output directory");
  demo->add_flag("--emit-config", o.emit_config, "Print the scenario as a config instead of running it");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kConfig;
  }

  try {
    if (sim->parsed()) return cmd_simulate(o, out);
    if (rec->parsed()) return cmd_recover(o, out, err);
    if (chk->parsed()) return cmd_check(o, out);
    if (demo->parsed()) return cmd_demo(o, out, err);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const ConditionError& e) {
    err << "not stably recoverable: " << e.what() << "\n";
    return kCondition;
  } catch (const std::exception& e) {
    err << "numerical error: " << e.what() << "\n";
    return kNumerical;
  }
  return kConfig;
}

}  // namespace nuds::cli
