#include "nsalpha/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "nsalpha/constants.hpp"
#include "nsalpha/errors.hpp"
#include "nsalpha/log.hpp"
#include "nsalpha/random_field.hpp"
#include "nsalpha/spectral_ops.hpp"
#include "nsalpha/trajectory.hpp"

namespace nsalpha {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string fmt(double v) { return format_double(v); }

// Runs job(i) for i in [0, n) on the worker pool. Results are stored by
// index, so the output does not depend on scheduling. A failed job leaves
// its slot empty and its message in `errors`.
template <class T>
std::vector<std::optional<T>> parallel_map(std::size_t n, const std::function<T(std::size_t)>& job,
                                           std::vector<std::string>& errors) {
  std::vector<std::optional<T>> out(n);
  std::vector<std::string> messages(n);
  std::size_t next = 0;
  std::mutex mutex;
  auto worker = [&] {
    for (;;) {
      std::size_t i;
      {
        std::lock_guard lock(mutex);
        if (next >= n) return;
        i = next++;
      }
      try {
        out[i] = job(i);
      } catch (const std::exception& e) {
        messages[i] = e.what();
      }
    }
  };
  const std::size_t threads = std::min<std::size_t>(n, std::max(1, worker_count()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (std::size_t i = 0; i < n; ++i)
    if (!messages[i].empty()) errors.push_back(messages[i]);
  return out;
}

Trajectory run_trajectory(const Scenario& s, const AdvectionModel& model, const SolenoidalField& u0,
                          const ForcingSpec& forcing, double t_end) {
  SimState state = initial_state(u0, model, s.step.filter);
  return integrate(std::move(state), s.step, forcing, model, t_end).trajectory;
}

Trajectory run_trajectory(const Scenario& s, const AdvectionModel& model) {
  return run_trajectory(s, model, s.u0, s.forcing, s.t_end);
}

SolenoidalField unit_direction(const TorusGrid& grid, std::uint64_t seed, double slope) {
  SpectralField f = random_solenoidal(grid, seed, slope).field();
  dealias(f);
  f *= 1.0 / l2_norm(f);
  return SolenoidalField::checked(std::move(f));
}

SolenoidalField scaled(const SolenoidalField& u, double norm) {
  const double n = l2_norm(u);
  if (n == 0.0 || norm == 0.0) return SolenoidalField(u.grid());
  return (norm / n) * u;
}

bool strictly_decreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i] < v[i - 1])) return false;
  return true;
}

StudyResult start(const StudySpec& spec) {
  spec.validate();
  StudyResult r;
  r.kind = spec.kind;
  r.table = CsvTable(study_columns(spec.kind));
  r.passed = true;
  return r;
}

void fail(StudyResult& r, std::string note) {
  r.passed = false;
  r.notes.push_back(std::move(note));
}

// Points that failed to run make the study fail; rows before the first
// failure are kept.
template <class T>
std::size_t usable_prefix(StudyResult& r, const std::vector<std::optional<T>>& points,
                          const std::vector<std::string>& errors) {
  std::size_t n = 0;
  while (n < points.size() && points[n]) ++n;
  for (const auto& e : errors) fail(r, "solver failure: " + e);
  return n;
}

void require_points(StudyResult& r, std::size_t count) {
  if (count < 3) fail(r, "fewer than 3 parameter points");
}

}  // namespace

// -- naming -------------------------------------------------------------------

std::string to_string(StudyKind kind) {
  switch (kind) {
    case StudyKind::alpha_to_zero: return "alpha_to_zero";
    case StudyKind::beta_to_one: return "beta_to_one";
    case StudyKind::continuous_dependence: return "continuous_dependence";
    case StudyKind::absorbing_set: return "absorbing_set";
    case StudyKind::appendix_epsilon: return "appendix_epsilon";
  }
  return "unknown";
}

std::optional<StudyKind> parse_study_kind(std::string_view name) {
  for (auto k : {StudyKind::alpha_to_zero, StudyKind::beta_to_one, StudyKind::continuous_dependence,
                 StudyKind::absorbing_set, StudyKind::appendix_epsilon})
    if (to_string(k) == name) return k;
  return std::nullopt;
}

std::vector<std::string> study_columns(StudyKind kind) {
  switch (kind) {
    case StudyKind::alpha_to_zero:
      return {"alpha", "ns_gap_linf_l2", "filter_gap_l2_l2"};
    case StudyKind::beta_to_one:
      return {"beta", "one_minus_beta", "gap_energy_norm", "filter_gap_l2_h1", "bound_energy_norm",
              "bound_filter"};
    case StudyKind::continuous_dependence:
      return {"perturbation", "delta", "horizon", "gap_energy_norm", "ratio", "bound"};
    case StudyKind::absorbing_set:
      return {"u0_multiple", "t", "energy", "bound", "analytic_entry_time"};
    case StudyKind::appendix_epsilon:
      return {"epsilon", "kappa", "gap_l2_l2", "filter_gap_l2_l2"};
  }
  return {};
}

std::string StudyResult::verdict_text() const {
  std::ostringstream out;
  out << "study = " << to_string(kind) << '\n';
  out << "passed = " << (passed ? "true" : "false") << '\n';
  out << "fitted_order = " << fmt(fitted_order) << '\n';
  out << "fitted_constant = " << fmt(fitted_constant) << '\n';
  for (const auto& n : notes) out << "note = " << n << '\n';
  return out.str();
}

int worker_count() {
  if (const char* env = std::getenv("NSALPHA_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return int(v);
    log::warning("ignoring invalid NSALPHA_THREADS");
  }
  return int(std::max(1u, std::thread::hardware_concurrency()));
}

double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("fit_loglog_slope: need two or more matching points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = double(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw std::invalid_argument("fit_loglog_slope: nonpositive data");
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw std::invalid_argument("fit_loglog_slope: degenerate abscissae");
  return (n * sxy - sx * sy) / denom;
}

void StudySpec::validate() const {
  if (values.empty()) throw std::invalid_argument("study: empty parameter list");
  auto monotone = [](const std::vector<double>& v, bool increasing) {
    for (std::size_t i = 1; i < v.size(); ++i)
      if (increasing ? !(v[i] > v[i - 1]) : !(v[i] < v[i - 1])) return false;
    return true;
  };
  bool ok = true;
  switch (kind) {
    case StudyKind::alpha_to_zero:
    case StudyKind::continuous_dependence:
    case StudyKind::appendix_epsilon: ok = monotone(values, false); break;
    case StudyKind::beta_to_one:
    case StudyKind::absorbing_set: ok = monotone(values, true); break;
  }
  if (!ok) throw std::invalid_argument("study " + to_string(kind) + ": parameter list not monotone");
  for (double v : values)
    if (!std::isfinite(v) || v < 0.0) throw std::invalid_argument("study: parameter values must be >= 0");
  if (kind == StudyKind::beta_to_one)
    for (double b : values)
      if (!(b > 0.0 && b < 1.0)) throw std::invalid_argument("study beta_to_one: beta must lie in (0,1)");
  if (kind == StudyKind::continuous_dependence) {
    if (horizons.empty() || !monotone(horizons, true))
      throw std::invalid_argument("study continuous_dependence: horizons must increase");
    if (horizons.back() > scenario.t_end * (1 + 1e-12))
      throw std::invalid_argument("study continuous_dependence: horizon beyond t_end");
  }
  scenario.step.validate();
}

// -- defaults -----------------------------------------------------------------

Scenario default_scenario(StudyKind kind) {
  TorusGrid grid(2.0 * kPi, 16);
  const double rms = 1.0;
  // same construction as random initial data read from a config
  auto initial = [&grid, rms](std::uint64_t seed, double slope) {
    SpectralField f = random_solenoidal(grid, seed, slope).field();
    dealias(f);
    f *= rms * std::sqrt(grid.volume()) / l2_norm(f);
    return SolenoidalField::checked(std::move(f));
  };
  SolenoidalField u0 = initial(2024, -2.0);
  Scenario s{grid,
             0.5,
             IndicatorSpec::smooth_local(0.5, 1.0),
             MollifierSpec::cutoff(4.0),
             random_shell_forcing(grid, 7, 1.0, 3.0, 1.0),
             u0,
             0.5,
             StepConfig{},
             1};
  s.step.dt = 0.01;
  s.step.nu = 0.1;
  switch (kind) {
    case StudyKind::alpha_to_zero:
      break;
    case StudyKind::beta_to_one:
      s.alpha = 0.5;
      break;
    case StudyKind::continuous_dependence:
      s.t_end = 1.0;
      break;
    case StudyKind::absorbing_set:
      // R^2 = 8 and 200 steps of 0.05 reach t = 10 > ln(8)/eta.
      s.step.nu = 0.25;
      s.step.dt = 0.05;
      s.forcing = random_shell_forcing(grid, 7, 1.0, 3.0, 0.5);
      s.u0 = initial(11, -1.0);
      s.t_end = 10.0;
      break;
    case StudyKind::appendix_epsilon: {
      s.u0 = initial(2024, -1.0);
      s.indicator = IndicatorSpec::global_energy(0.5, rms * std::sqrt(grid.volume()));
      s.mollifier = MollifierSpec::none();
      break;
    }
  }
  return s;
}

StudySpec default_study(StudyKind kind) {
  StudySpec spec{kind, {}, {}, default_scenario(kind)};
  switch (kind) {
    case StudyKind::alpha_to_zero: spec.values = {0.4, 0.2, 0.1, 0.05}; break;
    case StudyKind::beta_to_one: spec.values = {0.5, 0.75, 0.875, 0.9375}; break;
    case StudyKind::continuous_dependence:
      spec.values = {1e-2, 1e-3, 1e-4};
      spec.horizons = {0.25, 0.5, 1.0};
      break;
    case StudyKind::absorbing_set: spec.values = {0.0, 2.0, 4.0}; break;
    case StudyKind::appendix_epsilon: spec.values = {0.5, 0.25, 0.125}; break;
  }
  return spec;
}

StudyResult run_study(const StudySpec& spec) {
  switch (spec.kind) {
    case StudyKind::alpha_to_zero: return run_alpha_to_zero(spec);
    case StudyKind::beta_to_one: return run_beta_to_one(spec);
    case StudyKind::continuous_dependence: return run_continuous_dependence(spec);
    case StudyKind::absorbing_set: return run_absorbing_set(spec);
    case StudyKind::appendix_epsilon: return run_appendix_epsilon(spec);
  }
  throw std::invalid_argument("run_study: unknown kind");
}

// -- alpha -> 0 ---------------------------------------------------------------

StudyResult run_alpha_to_zero(const StudySpec& spec) {
  StudyResult r = start(spec);
  const Scenario& s = spec.scenario;
  const std::size_t n = spec.values.size();
  std::vector<std::string> errors;
  // Slot 0 holds the Navier-Stokes reference.
  auto runs = parallel_map<Trajectory>(n + 1, [&](std::size_t i) {
    if (i == 0) return run_trajectory(s, AdvectionModel::navier_stokes());
    FilterProblem p = s.filter_problem();
    p.alpha = spec.values[i - 1];
    return run_trajectory(s, AdvectionModel::alpha_model(p));
  }, errors);
  const std::size_t usable = usable_prefix(r, runs, errors);
  if (usable == 0) return r;
  const Trajectory& ns = *runs[0];

  std::vector<double> alphas, ns_gaps, filter_gaps;
  for (std::size_t i = 1; i < usable; ++i) {
    const Trajectory& tr = *runs[i];
    alphas.push_back(spec.values[i - 1]);
    ns_gaps.push_back(difference_norms(tr, TrajectoryField::velocity, ns, TrajectoryField::velocity).linf_l2);
    filter_gaps.push_back(difference_norms(tr, TrajectoryField::filtered, tr, TrajectoryField::velocity).l2_l2);
    r.table.add_row({alphas.back(), ns_gaps.back(), filter_gaps.back()});
  }
  require_points(r, alphas.size());
  if (alphas.size() >= 2) {
    r.fitted_order = fit_loglog_slope(alphas, filter_gaps);
    if (!(r.fitted_order >= spec.min_order))
      fail(r, "filter gap order " + fmt(r.fitted_order) + " below " + fmt(spec.min_order));
    if (!strictly_decreasing(ns_gaps)) fail(r, "Navier-Stokes gap not monotone decreasing");
  }
  r.notes.push_back("convergence asserted along the whole computed sequence");
  return r;
}

// -- beta -> 1 ----------------------------------------------------------------

StudyResult run_beta_to_one(const StudySpec& spec) {
  StudyResult r = start(spec);
  const Scenario& s = spec.scenario;
  const std::size_t n = spec.values.size();
  const double nu = s.step.nu;
  std::vector<std::string> errors;
  // Slot 0 holds the Leray-alpha reference (A = 1).
  auto runs = parallel_map<Trajectory>(n + 1, [&](std::size_t i) {
    FilterProblem p = s.filter_problem();
    if (i == 0) {
      p.indicator = IndicatorSpec::constant_one();
    } else {
      p.indicator.beta = spec.values[i - 1];
      if (p.indicator.kind == IndicatorKind::constant_one)
        throw std::invalid_argument("beta_to_one needs a beta-dependent indicator");
    }
    return run_trajectory(s, AdvectionModel::alpha_model(p));
  }, errors);
  const std::size_t usable = usable_prefix(r, runs, errors);
  if (usable == 0) return r;
  const Trajectory& ref = *runs[0];

  double c_energy = 0.0;
  double c_filter = 0.0;
  std::size_t points = 0;
  for (std::size_t i = 1; i < usable; ++i) {
    const double beta = spec.values[i - 1];
    const double eps = 1.0 - beta;
    const double gap_e =
        difference_norms(*runs[i], TrajectoryField::velocity, ref, TrajectoryField::velocity).energy_norm(nu);
    const double gap_f =
        difference_norms(*runs[i], TrajectoryField::filtered, ref, TrajectoryField::filtered).l2_h1();
    if (i == 1) {
      c_energy = gap_e / eps;
      c_filter = gap_f / eps;
      r.fitted_constant = c_filter;
    }
    const double be = c_energy * eps;
    const double bf = c_filter * eps;
    r.table.add_row({beta, eps, gap_e, gap_f, be, bf});
    ++points;
    if (gap_e > be * (1 + 1e-12)) fail(r, "energy-norm gap above C(1-beta) at beta=" + fmt(beta));
    if (gap_f > bf * (1 + 1e-12)) fail(r, "filter gap above C(1-beta) at beta=" + fmt(beta));
  }
  require_points(r, points);
  std::vector<double> eps, gaps;
  for (const auto& row : r.table.rows()) {
    eps.push_back(row[1]);
    gaps.push_back(row[3]);
  }
  if (eps.size() >= 2 && gaps.front() > 0.0) r.fitted_order = fit_loglog_slope(eps, gaps);
  return r;
}

// -- continuous dependence ----------------------------------------------------

StudyResult run_continuous_dependence(const StudySpec& spec) {
  StudyResult r = start(spec);
  const Scenario& s = spec.scenario;
  const double nu = s.step.nu;
  const double t_end = spec.horizons.back();
  const std::size_t n = spec.values.size();
  const AdvectionModel model = AdvectionModel::alpha_model(s.filter_problem());
  const SolenoidalField w = unit_direction(s.grid, s.seed, -2.0);
  SolenoidalField g = SolenoidalField::checked([&] {
    SpectralField f = random_solenoidal_shell(s.grid, s.seed + 1, 1.0, 3.0).field();
    dealias(f);
    f *= 1.0 / hminus1_norm(f);
    return f;
  }());

  // Slot 0: base run; 1..n: data perturbations; n+1..2n: forcing perturbations.
  std::vector<std::string> errors;
  auto runs = parallel_map<Trajectory>(2 * n + 1, [&](std::size_t i) {
    if (i == 0) return run_trajectory(s, model, s.u0, s.forcing, t_end);
    if (i <= n) {
      SolenoidalField u0 = s.u0;
      u0.axpy(spec.values[i - 1], w);
      return run_trajectory(s, model, u0, s.forcing, t_end);
    }
    SolenoidalField f = s.forcing.at(0.0);
    f.axpy(spec.values[i - n - 1], g);
    return run_trajectory(s, model, s.u0, ForcingSpec::steady(f), t_end);
  }, errors);
  for (const auto& e : errors) fail(r, "solver failure: " + e);
  for (const auto& run : runs)
    if (!run) return r;

  struct Row {
    int kind;
    double delta, horizon, gap, ratio;
  };
  std::vector<Row> rows;
  for (std::size_t i = 1; i <= 2 * n; ++i) {
    const bool data = i <= n;
    const double delta = spec.values[data ? i - 1 : i - n - 1];
    for (double h : spec.horizons) {
      const Trajectory a = runs[0]->prefix(h);
      const Trajectory b = runs[i]->prefix(h);
      const double gap =
          difference_norms(b, TrajectoryField::velocity, a, TrajectoryField::velocity).energy_norm(nu);
      // Right-hand side of the stability estimate without the exponential.
      const double rhs = data ? delta * delta : 4.0 / nu * a.t.back() * delta * delta;
      rows.push_back({data ? 0 : 1, delta, h, gap, rhs > 0.0 ? gap * gap / rhs : 0.0});
    }
  }

  // Exponential rate fitted on the data rows at the shortest horizon.
  double worst0 = 0.0;
  for (const auto& row : rows)
    if (row.kind == 0 && row.horizon == spec.horizons.front()) worst0 = std::max(worst0, row.ratio);
  const double c = worst0 > 0.0 ? std::log(worst0) / std::sqrt(spec.horizons.front()) : 0.0;
  r.fitted_constant = c;

  for (const auto& row : rows) {
    const double bound = std::exp(c * std::sqrt(row.horizon));
    r.table.add_row({double(row.kind), row.delta, row.horizon, row.gap, row.ratio, bound});
    if (row.ratio > bound * (1 + 1e-9))
      fail(r, "ratio above fitted exponential bound at delta=" + fmt(row.delta) + ", T=" + fmt(row.horizon));
  }
  for (int kind : {0, 1}) {
    for (double h : spec.horizons) {
      double lo = INFINITY, hi = 0.0;
      for (const auto& row : rows) {
        if (row.kind != kind || row.horizon != h) continue;
        lo = std::min(lo, row.ratio);
        hi = std::max(hi, row.ratio);
      }
      if (!(hi <= spec.uniformity_factor * lo))
        fail(r, std::string(kind == 0 ? "data" : "forcing") + " ratio not uniform in delta at T=" + fmt(h));
    }
  }
  require_points(r, n);
  return r;
}

// -- absorbing set ------------------------------------------------------------

StudyResult run_absorbing_set(const StudySpec& spec) {
  StudyResult r = start(spec);
  const Scenario& s = spec.scenario;
  const double nu = s.step.nu;
  const double L = s.grid.length();
  const double f = s.forcing.hminus1_norm();
  ModelParams params;
  params.nu = nu;
  params.L = L;
  params.f_hminus1 = f;
  const ConstantsReport c = compute_chain(params);
  const double eta = c.eta;
  const double r2 = c.R2;
  const AdvectionModel model = AdvectionModel::alpha_model(s.filter_problem());

  std::vector<std::string> errors;
  auto runs = parallel_map<Trajectory>(spec.values.size(), [&](std::size_t i) {
    const SolenoidalField u0 = scaled(s.u0, std::sqrt(spec.values[i] * r2));
    return run_trajectory(s, model, u0, s.forcing, s.t_end);
  }, errors);
  const std::size_t usable = usable_prefix(r, runs, errors);

  for (std::size_t i = 0; i < usable; ++i) {
    const double m = spec.values[i];
    const double analytic = m * 2.0 > 1.0 ? std::log(2.0 * m) / eta : 0.0;
    const Trajectory& tr = *runs[i];
    double entry = INFINITY;
    for (std::size_t j = 0; j < tr.size(); ++j) {
      const double e = std::pow(l2_norm(tr.u[j]), 2);
      const double bound = std::exp(-eta * tr.t[j]) * m * r2 + 0.5 * r2;
      r.table.add_row({m, tr.t[j], e, bound, analytic});
      if (e > bound * (1 + 1e-12)) fail(r, "energy above bound at multiple " + fmt(m) + ", t=" + fmt(tr.t[j]));
      if (!std::isfinite(entry) && e <= r2) entry = tr.t[j];
    }
    r.notes.push_back("multiple " + fmt(m) + ": entry time " + fmt(entry) + ", analytic " + fmt(analytic));
    if (entry > analytic + s.step.dt * (1 + 1e-12))
      fail(r, "entry into the absorbing ball later than the analytic time for multiple " + fmt(m));
  }
  r.fitted_constant = r2;
  require_points(r, usable);
  return r;
}

// -- appendix: mollifier epsilon -> 0 -----------------------------------------

StudyResult run_appendix_epsilon(const StudySpec& spec) {
  if (spec.scenario.indicator.kind != IndicatorKind::global_energy)
    throw std::invalid_argument("appendix_epsilon requires the global_energy indicator");
  StudyResult r = start(spec);
  const Scenario& s = spec.scenario;
  const std::size_t n = spec.values.size();
  std::vector<std::string> errors;
  // Slot 0 holds the unmollified reference.
  auto runs = parallel_map<Trajectory>(n + 1, [&](std::size_t i) {
    FilterProblem p = s.filter_problem();
    p.mollifier = i == 0 ? MollifierSpec::none() : MollifierSpec::cutoff(1.0 / spec.values[i - 1]);
    return run_trajectory(s, AdvectionModel::alpha_model(p));
  }, errors);
  const std::size_t usable = usable_prefix(r, runs, errors);
  if (usable == 0) return r;
  const Trajectory& ref = *runs[0];

  std::vector<double> eps, gaps, filter_gaps;
  for (std::size_t i = 1; i < usable; ++i) {
    eps.push_back(spec.values[i - 1]);
    gaps.push_back(difference_norms(*runs[i], TrajectoryField::velocity, ref, TrajectoryField::velocity).l2_l2);
    filter_gaps.push_back(
        difference_norms(*runs[i], TrajectoryField::filtered, ref, TrajectoryField::filtered).l2_l2);
    r.table.add_row({eps.back(), 1.0 / eps.back(), gaps.back(), filter_gaps.back()});
  }
  require_points(r, eps.size());
  if (!strictly_decreasing(gaps)) fail(r, "velocity gap not monotone in epsilon");
  if (!strictly_decreasing(filter_gaps)) fail(r, "filter gap not monotone in epsilon");
  bool positive = true;
  for (double gval : gaps) positive = positive && gval > 0.0;
  if (eps.size() >= 2 && positive) r.fitted_order = fit_loglog_slope(eps, gaps);
  return r;
}

}  // namespace nsalpha
