// nsalpha: command-line driver for the Navier-Stokes-alpha simulator.
//
// Exit codes: 0 success, 1 study verdict FAIL, 2 configuration or input
// error, 3 solver failure, 4 invariant violation.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nsalpha/config.hpp"
#include "nsalpha/constants.hpp"
#include "nsalpha/errors.hpp"
#include "nsalpha/experiments.hpp"
#include "nsalpha/filter_bounds.hpp"
#include "nsalpha/log.hpp"
#include "nsalpha/random_field.hpp"
#include "nsalpha/snapshot.hpp"
#include "nsalpha/spectral_ops.hpp"
#include "nsalpha/trajectory.hpp"
#include "nsalpha/verify.hpp"

namespace fs = std::filesystem;
using namespace nsalpha;

namespace {

enum Exit { kOk = 0, kVerdictFail = 1, kConfig = 2, kSolver = 3, kInvariant = 4 };

struct Common {
  std::string config_path;
  std::vector<std::string> sets;
  // Named flags; empty means "not given".
  std::optional<double> nu, alpha, beta, dt, t_end;
  std::optional<int> n;
  std::optional<std::string> scheme, ledger, snapshot;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("-c,--config", c.config_path, "INI configuration file")->check(CLI::ExistingFile);
  cmd->add_option("--set", c.sets, "Override as section.key=value (repeatable)");
  cmd->add_option("--nu", c.nu, "Viscosity");
  cmd->add_option("--alpha", c.alpha, "Filter length");
  cmd->add_option("--beta", c.beta, "Indicator lower bound");
  cmd->add_option("--n", c.n, "Grid points per axis");
  cmd->add_option("--dt", c.dt, "Time step");
  cmd->add_option("--t-end", c.t_end, "Final time");
  cmd->add_option("--scheme", c.scheme, "duhamel_picard or imex_cn");
  cmd->add_option("--ledger", c.ledger, "Energy ledger CSV path");
  cmd->add_option("--snapshot", c.snapshot, "Snapshot path");
}

std::string num(double v) { return format_double(v); }

// Precedence: named flags > --set > config file > defaults.
// A bare study kind without -c starts from that study's own scenario.
RunConfig resolve(const Common& c, const std::string& kind = {}) {
  ConfigOverrides o;
  for (const auto& s : c.sets) o.push_back(parse_override(s));
  if (c.nu) o.emplace_back("physics.nu", num(*c.nu));
  if (c.alpha) o.emplace_back("physics.alpha", num(*c.alpha));
  if (c.beta) o.emplace_back("physics.beta", num(*c.beta));
  if (c.n) o.emplace_back("grid.n", std::to_string(*c.n));
  if (c.dt) o.emplace_back("time.dt", num(*c.dt));
  if (c.t_end) o.emplace_back("time.t_end", num(*c.t_end));
  if (c.scheme) o.emplace_back("time.scheme", *c.scheme);
  if (c.ledger) o.emplace_back("output.ledger", *c.ledger);
  if (c.snapshot) o.emplace_back("output.snapshot", *c.snapshot);
  if (c.config_path.empty()) {
    std::string base;
    if (!kind.empty()) {
      const auto k = parse_study_kind(kind);
      if (!k) throw ConfigError({"study.kind: unknown study '" + kind + "'"});
      base = default_study_config_text(*k);
    }
    return parse_config(base, o);
  }
  return load_config(c.config_path, o);
}

int run_config(const Common& common) {
  std::cout << to_text(resolve(common));
  return kOk;
}

int run_simulate(const Common& common) {
  const RunConfig cfg = resolve(common);
  const TorusGrid grid = make_grid(cfg);
  const AdvectionModel model = make_model(cfg, grid);
  const ForcingSpec forcing = make_forcing(cfg, grid);
  auto [u0, t0] = make_initial(cfg, grid);
  const StepConfig step = make_step_config(cfg);
  SimState state = initial_state(std::move(u0), model, step.filter, t0);

  long steps = 0;
  const int every = cfg.output.snapshot_interval;
  auto observer = [&](const SimState& s) {
    if (!cfg.output.snapshot.empty() && every > 0 && steps > 0 && steps % every == 0)
      write_snapshot(s.u, s.t, cfg.output.snapshot + "." + std::to_string(steps));
    ++steps;
  };
  const RunResult result =
      integrate(std::move(state), step, forcing, model, t0 + cfg.time.t_end, false, observer);
  const SimState& fin = result.final_state;
  if (!cfg.output.ledger.empty()) fin.ledger.to_csv().write_file(cfg.output.ledger);
  if (!cfg.output.snapshot.empty()) write_snapshot(fin.u, fin.t, cfg.output.snapshot);

  double min_margin = INFINITY;
  for (const auto& r : fin.ledger.rows()) min_margin = std::min(min_margin, r.slack + r.allowance);
  std::cout << "t = " << num(fin.t) << '\n'
            << "steps = " << steps - 1 << '\n'
            << "energy = " << num(fin.ledger.back().energy) << '\n'
            << "dissipation = " << num(fin.ledger.back().dissipation) << '\n'
            << "work = " << num(fin.ledger.back().work) << '\n'
            << "slack = " << num(fin.ledger.back().slack) << '\n'
            << "equality_drift = " << num(fin.ledger.equality_drift()) << '\n'
            << "min_slack_margin = " << num(min_margin) << '\n'
            << "divergence_residual = " << num(divergence_residual(fin.u)) << '\n';
  return kOk;
}

void print_report(const BoundReport& r) {
  std::cout << r.name << ": measured = " << num(r.measured) << ", explicit_bound = " << num(r.explicit_bound)
            << ", fitted_factor = " << num(r.fitted_factor) << ", ratio = " << num(r.ratio()) << ", "
            << (r.violated ? "VIOLATED" : "ok") << '\n';
}

int run_filter_solve(const Common& common) {
  const RunConfig cfg = resolve(common);
  const TorusGrid grid = make_grid(cfg);
  const FilterProblem problem = make_filter_problem(cfg, grid);
  const auto [u, t0] = make_initial(cfg, grid);
  (void)t0;
  FilterOptions opts;
  opts.tolerance = cfg.time.filter_tol;
  opts.max_iterations = cfg.time.filter_max_iter;
  const FilterSolution sol = solve_filter(problem, u, opts);

  std::cout << "iterations = " << sol.iterations << '\n'
            << "residual = " << num(sol.residual) << '\n'
            << "u_l2 = " << num(l2_norm(u)) << '\n'
            << "u_alpha_l2 = " << num(l2_norm(sol.u_alpha)) << '\n'
            << "u_alpha_h1 = " << num(sobolev_norm(sol.u_alpha, 1.0, SobolevKind::inhomogeneous)) << '\n';

  bool violated = false;
  const BoundReport h1 = verify_h1_bound(problem, u, sol);
  print_report(h1);
  violated |= h1.violated;

  const bool cutoff = problem.mollifier.kind == MollifierKind::cutoff;
  if (cutoff) {
    SolenoidalField u2 = u;
    u2.axpy(1e-2 * std::max(l2_norm(u), 1.0), [&] {
      SpectralField w = random_solenoidal(grid, cfg.initial.seed + 1, -2.0).field();
      dealias(w);
      w *= 1.0 / l2_norm(w);
      return SolenoidalField::checked(std::move(w));
    }());
    const BoundReport d1 = verify_h1_continuous_dependence(problem, u, u2, opts);
    print_report(d1);
    violated |= d1.violated;
    if (std::isfinite(problem.indicator.gradient_lipschitz())) {
      const H2Report h2 = verify_h2_bound(problem, u, sol);
      print_report(h2);
      std::cout << "h2_norm = " << num(h2.h2_norm) << ", strong_residual = " << num(h2.strong_residual) << '\n';
      const BoundReport d2 = verify_h2_continuous_dependence(problem, u, u2, opts);
      print_report(d2);
      violated |= h2.violated || d2.violated;
    }
  }
  return violated ? kInvariant : kOk;
}

int run_constants(const Common& common) {
  const RunConfig cfg = resolve(common);
  ModelParams params = make_model_params(cfg);
  try {
    std::cout << compute_chain(params).to_text();
  } catch (const std::domain_error& e) {
    throw ConfigError({e.what()});
  }
  return kOk;
}

int run_study_cmd(const Common& common, const std::string& kind, const std::string& output) {
  RunConfig cfg = resolve(common, kind);
  if (!cfg.study) cfg.study = StudyConfig{};
  if (!kind.empty()) cfg.study->kind = kind;
  if (!output.empty()) cfg.study->output = output;
  const StudySpec spec = make_study_spec(cfg);
  const StudyResult result = run_study(spec);

  const std::string csv = result.table.to_string();
  if (!cfg.study->output.empty()) {
    fs::create_directories(cfg.study->output);
    const fs::path base = fs::path(cfg.study->output) / to_string(spec.kind);
    std::ofstream(base.string() + ".csv") << csv;
    std::ofstream(base.string() + ".verdict.txt") << result.verdict_text();
  } else {
    std::cout << csv;
  }
  std::cout << result.verdict_text();
  std::cout << (result.passed ? "PASS" : "FAIL") << '\n';
  return result.passed ? kOk : kVerdictFail;
}

int run_verify(const std::string& snapshot_path, const std::string& ledger_path) {
  const Snapshot snap = read_snapshot(snapshot_path);
  EnergyLedger ledger;
  try {
    ledger = EnergyLedger::from_csv(read_csv(ledger_path));
  } catch (const std::invalid_argument& e) {
    throw ConfigError({std::string("ledger '") + ledger_path + "': " + e.what()});
  }
  bool ok = true;
  for (const auto& c : verify_run(snap, ledger)) {
    std::cout << (c.passed ? "PASS " : "FAIL ") << c.name;
    if (!c.detail.empty()) std::cout << ": " << c.detail;
    std::cout << '\n';
    ok = ok && c.passed;
  }
  return ok ? kOk : kInvariant;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudo-spectral Navier-Stokes-alpha simulator with a nonlinear filter"};
  app.require_subcommand(1);
  bool verbose = false;
  app.add_flag("-v,--verbose", verbose, "Log progress to stderr");

  Common sim_opts, filter_opts, const_opts, study_opts, config_opts;
  auto* sim = app.add_subcommand("simulate", "Integrate the model and write the energy ledger");
  add_common(sim, sim_opts);
  auto* filt = app.add_subcommand("filter-solve", "Solve one filter problem and report its estimates");
  add_common(filt, filter_opts);
  auto* cons = app.add_subcommand("constants", "Print the explicit constant chain");
  add_common(cons, const_opts);
  auto* study = app.add_subcommand("study", "Run a convergence or long-time study");
  add_common(study, study_opts);
  std::string study_kind, study_output;
  study->add_option("kind", study_kind,
                    "alpha_to_zero, beta_to_one, continuous_dependence, absorbing_set, appendix_epsilon");
  study->add_option("-o,--output", study_output, "Directory for <kind>.csv and <kind>.verdict.txt");
  auto* ver = app.add_subcommand("verify", "Check invariants of a stored snapshot and ledger");
  std::string ver_snapshot, ver_ledger;
  ver->add_option("--snapshot", ver_snapshot, "Snapshot file")->required()->check(CLI::ExistingFile);
  ver->add_option("--ledger", ver_ledger, "Ledger CSV")->required()->check(CLI::ExistingFile);
  auto* echo = app.add_subcommand("config", "Print the resolved configuration in canonical form");
  add_common(echo, config_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }
  log::set_level(verbose ? log::Level::info : log::Level::warning);

  try {
    if (*sim) return run_simulate(sim_opts);
    if (*filt) return run_filter_solve(filter_opts);
    if (*cons) return run_constants(const_opts);
    if (*study) return run_study_cmd(study_opts, study_kind, study_output);
    if (*ver) return run_verify(ver_snapshot, ver_ledger);
    if (*echo) return run_config(config_opts);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error:\n";
    for (const auto& p : e.problems()) std::cerr << "  " << p << '\n';
    return kConfig;
  } catch (const SnapshotError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kConfig;
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return kInvariant;
  } catch (const SolverError& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return kSolver;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kConfig;
  } catch (const std::domain_error& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kConfig;
  }
  return kOk;
}
