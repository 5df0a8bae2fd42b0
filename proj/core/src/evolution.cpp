#include "nsalpha/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "nsalpha/errors.hpp"
#include "nsalpha/log.hpp"
#include "nsalpha/random_field.hpp"
#include "nsalpha/spectral_ops.hpp"

namespace nsalpha {

namespace {

// (1 - e^{-x}) / x, accurate near 0.
double phi1(double x) { return x < 1e-8 ? 1.0 - 0.5 * x : -std::expm1(-x) / x; }

double hdot1(const SpectralField& f) { return sobolev_norm(f, 1.0, SobolevKind::homogeneous); }

// sup-in-slab L^2 plus sqrt(nu) L^2 H^1 hom by the trapezoid rule; the slab
// start is common to all iterates, so only the end node contributes.
double slab_norm(const SpectralField& v, double dt, double nu) {
  return l2_norm(v) + std::sqrt(nu * 0.5 * dt) * hdot1(v);
}

// Exact Duhamel integral of a steady force, or the exponential trapezoid
// for a time-dependent one.
SolenoidalField forcing_integral(const ForcingSpec& forcing, double t, double dt, double nu) {
  if (forcing.is_zero()) return SolenoidalField(forcing.grid());
  if (forcing.is_steady()) {
    return apply_multiplier(forcing.at(t), [dt, nu](const ModeInfo& m) {
      return dt * phi1(nu * m.k2 * dt);
    });
  }
  SolenoidalField out = heat_semigroup(forcing.at(t), dt, nu);
  out += forcing.at(t + dt);
  out *= 0.5 * dt;
  return out;
}

double max_speed(const SpectralField& u) {
  const auto mag2 = squared_magnitude(u);
  double m = 0.0;
  for (double v : mag2) m = std::max(m, v);
  return std::sqrt(m);
}

FilterSolution trivial_solution(const SolenoidalField& u) {
  return FilterSolution{u, 0, 0.0, {}};
}

SimState advance(const SimState& state, const StepConfig& config, const ForcingSpec& forcing,
                 const AdvectionModel& model, double dt, int depth) {
  StepConfig local = config;
  local.dt = dt;
  try {
    if (config.scheme == Scheme::imex_cn) return step_imex_cn(state, local, forcing, model);
    return step_duhamel_picard(state, local, forcing, model);
  } catch (const ContractionError& e) {
    if (depth >= config.max_halvings) throw;
    std::ostringstream msg;
    msg << "picard slab at t=" << state.t << " failed to contract (factor "
        << e.contraction_factor() << "); halving dt to " << 0.5 * dt;
    log::warning(msg.str());
    SimState mid = advance(state, config, forcing, model, 0.5 * dt, depth + 1);
    SimState out = advance(mid, config, forcing, model, 0.5 * dt, depth + 1);
    out.diagnostics.halvings = std::max(out.diagnostics.halvings, depth + 1);
    return out;
  }
}

}  // namespace

// -- forcing ------------------------------------------------------------------

double hminus1_norm(const SpectralField& f) {
  return sobolev_norm(f, -1.0, SobolevKind::homogeneous);
}

ForcingSpec ForcingSpec::none(const TorusGrid& grid) {
  return ForcingSpec(SolenoidalField(grid));
}

ForcingSpec ForcingSpec::steady(SolenoidalField f) {
  SpectralField field = f.field();
  dealias(field);
  ForcingSpec out(SolenoidalField::checked(std::move(field)));
  out.hminus1_ = nsalpha::hminus1_norm(out.steady_);
  out.l2_ = nsalpha::l2_norm(out.steady_);
  return out;
}

ForcingSpec ForcingSpec::time_varying(const TorusGrid& grid, Callable f) {
  if (!f) throw std::invalid_argument("ForcingSpec::time_varying: empty callable");
  ForcingSpec out(SolenoidalField{grid});
  out.callable_ = std::move(f);
  const SolenoidalField f0 = out.at(0.0);
  out.hminus1_ = nsalpha::hminus1_norm(f0);
  out.l2_ = nsalpha::l2_norm(f0);
  return out;
}

SolenoidalField ForcingSpec::at(double t) const {
  if (!callable_) return steady_;
  SolenoidalField f = callable_(t);
  require_same_grid(f.grid(), steady_.grid(), "ForcingSpec::at");
  SpectralField field = f.field();
  dealias(field);
  return SolenoidalField::checked(std::move(field));
}

ForcingSpec random_shell_forcing(const TorusGrid& grid, std::uint64_t seed, double shell_min,
                                 double shell_max, double amplitude) {
  if (amplitude < 0.0) throw std::invalid_argument("random_shell_forcing: amplitude < 0");
  if (amplitude == 0.0) return ForcingSpec::none(grid);
  SolenoidalField f = random_solenoidal_shell(grid, seed, shell_min, shell_max);
  SpectralField field = f.field();
  dealias(field);
  const double n = hminus1_norm(field);
  if (n == 0.0) throw std::invalid_argument("random_shell_forcing: shell holds no retained modes");
  field *= amplitude / n;
  return ForcingSpec::steady(SolenoidalField::checked(std::move(field)));
}

// -- configuration ------------------------------------------------------------

void StepConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("StepConfig: dt must be > 0");
  if (!(nu > 0.0) || !std::isfinite(nu)) throw std::invalid_argument("StepConfig: nu must be > 0");
  if (!(picard_tol > 0.0)) throw std::invalid_argument("StepConfig: picard_tol must be > 0");
  if (picard_max_iter < 1) throw std::invalid_argument("StepConfig: picard_max_iter must be >= 1");
  if (max_halvings < 0) throw std::invalid_argument("StepConfig: max_halvings must be >= 0");
}

// -- operators ----------------------------------------------------------------

SpectralField heat_semigroup(const SpectralField& v, double tau, double nu) {
  if (tau < 0.0) throw std::invalid_argument("heat_semigroup: tau must be >= 0");
  if (tau == 0.0) return v;
  return apply_multiplier(v, [tau, nu](const ModeInfo& m) { return std::exp(-nu * m.k2 * tau); });
}

SolenoidalField heat_semigroup(const SolenoidalField& v, double tau, double nu) {
  return SolenoidalField::trusted(heat_semigroup(v.field(), tau, nu));
}

SolenoidalField nonlinear_term(const SolenoidalField& u, const SolenoidalField& u_alpha) {
  require_same_grid(u.grid(), u_alpha.grid(), "nonlinear_term");
  return leray_project(divergence_of_tensor(outer_product(u.field(), u_alpha.field())));
}

FilterSolution filtered_velocity(const AdvectionModel& model, const SolenoidalField& u,
                                 const FilterOptions& options,
                                 const SolenoidalField* initial_guess) {
  if (model.is_navier_stokes()) return trivial_solution(u);
  return solve_filter(*model.filter, u, options, initial_guess);
}

SimState initial_state(SolenoidalField u0, const AdvectionModel& model,
                       const FilterOptions& options, double t0) {
  SpectralField field = u0.field();
  dealias(field);
  SolenoidalField u = SolenoidalField::checked(std::move(field));
  FilterSolution ua = filtered_velocity(model, u, options);
  SolenoidalField n0 = nonlinear_term(u, ua.u_alpha);
  const double e0 = std::pow(l2_norm(u), 2);
  return SimState{t0, std::move(u), std::move(ua), EnergyLedger(t0, e0), std::move(n0),
                  std::nullopt, {}};
}

// -- time stepping ------------------------------------------------------------

SimState step_duhamel_picard(const SimState& state, const StepConfig& config,
                             const ForcingSpec& forcing, const AdvectionModel& model) {
  config.validate();
  const double dt = config.dt;
  const double nu = config.nu;
  const SolenoidalField n_start =
      state.nonlinear ? *state.nonlinear : nonlinear_term(state.u, state.u_alpha.u_alpha);

  // U0 = E(dt) u^n + int_0^dt E(dt - s) f ds; the start-node nonlinear term
  // is fixed for the whole slab.
  SolenoidalField base = heat_semigroup(state.u, dt, nu);
  base += forcing_integral(forcing, state.t, dt, nu);
  const SolenoidalField e_n_start = heat_semigroup(n_start, dt, nu);

  SolenoidalField v = base;
  v.axpy(-dt, e_n_start);  // exponential Euler predictor

  StepDiagnostics diag;
  FilterSolution va = filtered_velocity(model, v, config.filter, &state.u_alpha.u_alpha);
  diag.filter_iterations += va.iterations;
  double previous_increment = -1.0;
  bool converged = false;

  for (int it = 1; it <= config.picard_max_iter; ++it) {
    SolenoidalField next = base;
    next.axpy(-0.5 * dt, e_n_start);
    next.axpy(-0.5 * dt, nonlinear_term(v, va.u_alpha));

    const double increment = slab_norm(next - v, dt, nu);
    const double scale = std::max(slab_norm(next, dt, nu), 1e-300);
    if (previous_increment > 0.0) {
      const double ratio = increment / previous_increment;
      // Ratios measured at roundoff level carry no information.
      if (increment > 1e-13 * scale) diag.contraction_factor = std::max(diag.contraction_factor, ratio);
      if (ratio >= 1.0 && increment > config.picard_tol * scale) {
        std::ostringstream msg;
        msg << "Picard iteration diverges on slab [" << state.t << ", " << state.t + dt
            << "]: contraction factor " << ratio << "; reduce dt";
        throw ContractionError(msg.str(), ratio);
      }
    }
    previous_increment = increment;
    v = std::move(next);
    va = filtered_velocity(model, v, config.filter, &va.u_alpha);
    diag.filter_iterations += va.iterations;
    diag.picard_iterations = it;
    if (increment <= config.picard_tol * scale) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    std::ostringstream msg;
    msg << "Picard iteration did not reach tolerance " << config.picard_tol << " in "
        << config.picard_max_iter << " iterations on slab [" << state.t << ", " << state.t + dt
        << "]; reduce dt";
    throw ContractionError(msg.str(), std::max(diag.contraction_factor, 1.0));
  }

  SolenoidalField n_end = nonlinear_term(v, va.u_alpha);
  diag.cfl = dt * max_speed(v) * state.u.grid().n() / state.u.grid().length();
  SimState next{state.t + dt, std::move(v),   std::move(va), state.ledger,
                std::move(n_end), n_start, diag};
  next.ledger = update_energy_ledger(state, next, forcing, nu);
  return next;
}

SimState step_imex_cn(const SimState& state, const StepConfig& config,
                      const ForcingSpec& forcing, const AdvectionModel& model) {
  config.validate();
  if (!state.previous_nonlinear) return step_duhamel_picard(state, config, forcing, model);

  const double dt = config.dt;
  const double nu = config.nu;
  const SolenoidalField n_now =
      state.nonlinear ? *state.nonlinear : nonlinear_term(state.u, state.u_alpha.u_alpha);

  StepDiagnostics diag;
  diag.cfl = dt * max_speed(state.u) * state.u.grid().n() / state.u.grid().length();
  if (diag.cfl > 0.5) {
    std::ostringstream msg;
    msg << "imex_cn: CFL number " << diag.cfl << " exceeds 0.5 at t=" << state.t;
    log::warning(msg.str());
  }

  SolenoidalField rhs = apply_multiplier(state.u, [dt, nu](const ModeInfo& m) {
    return 1.0 - 0.5 * dt * nu * m.k2;
  });
  rhs.axpy(-1.5 * dt, n_now);
  rhs.axpy(0.5 * dt, *state.previous_nonlinear);
  if (!forcing.is_zero()) {
    rhs.axpy(0.5 * dt, forcing.at(state.t));
    rhs.axpy(0.5 * dt, forcing.at(state.t + dt));
  }
  SolenoidalField u_next = apply_multiplier(rhs, [dt, nu](const ModeInfo& m) {
    return 1.0 / (1.0 + 0.5 * dt * nu * m.k2);
  });

  FilterSolution ua = filtered_velocity(model, u_next, config.filter, &state.u_alpha.u_alpha);
  diag.filter_iterations = ua.iterations;
  SolenoidalField n_end = nonlinear_term(u_next, ua.u_alpha);
  SimState next{state.t + dt, std::move(u_next), std::move(ua), state.ledger,
                std::move(n_end), n_now, diag};
  next.ledger = update_energy_ledger(state, next, forcing, nu, Scheme::imex_cn);
  return next;
}

SimState step(const SimState& state, const StepConfig& config, const ForcingSpec& forcing,
              const AdvectionModel& model) {
  config.validate();
  return advance(state, config, forcing, model, config.dt, 0);
}

// -- energy ledger ------------------------------------------------------------

namespace {

// Per-mode bound on the second time derivative of the balance integrands
// 2 nu |k|^2 |u_k|^2 and 2 Re(f_k conj u_k), with |u_k'| bounded through
// u' = f - nu |k|^2 u - N. Used for the trapezoid error allowance.
double quadrature_curvature(const SolenoidalField& u, const SolenoidalField* f,
                            const SolenoidalField* n, double nu) {
  const auto modes = u.grid().modes();
  double sum = 0.0;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    const auto& m = modes[i];
    if (m.k2 == 0.0) continue;
    const double a = nu * m.k2;
    double mode = 0.0;
    for (int d = 0; d < 3; ++d) {
      const double uk = std::abs(u.component(d)[i]);
      const double fk = f ? std::abs(f->component(d)[i]) : 0.0;
      const double nk = n ? std::abs(n->component(d)[i]) : 0.0;
      const double rate = fk + a * uk + nk;
      mode += 4.0 * a * (rate * rate + a * uk * rate) + 2.0 * a * fk * rate;
    }
    sum += m.weight * mode;
  }
  return u.grid().volume() * sum;
}

}  // namespace

EnergyLedger update_energy_ledger(const SimState& prev, const SimState& next,
                                  const ForcingSpec& forcing, double nu, Scheme scheme) {
  if (prev.ledger.empty()) throw std::invalid_argument("update_energy_ledger: empty ledger");
  const double dt = next.t - prev.t;
  if (!(dt > 0.0)) throw std::invalid_argument("update_energy_ledger: states not consecutive");

  const double d0 = 2.0 * nu * std::pow(hdot1(prev.u), 2);
  const double d1 = 2.0 * nu * std::pow(hdot1(next.u), 2);
  double w0 = 0.0;
  double w1 = 0.0;
  double q0 = 0.0;
  double q1 = 0.0;
  const SolenoidalField* n0 = prev.nonlinear ? &*prev.nonlinear : nullptr;
  const SolenoidalField* n1 = next.nonlinear ? &*next.nonlinear : nullptr;
  if (forcing.is_zero()) {
    q0 = quadrature_curvature(prev.u, nullptr, n0, nu);
    q1 = quadrature_curvature(next.u, nullptr, n1, nu);
  } else {
    const SolenoidalField f0 = forcing.at(prev.t);
    const SolenoidalField f1 = forcing.at(next.t);
    w0 = 2.0 * inner_product(f0, prev.u);
    w1 = 2.0 * inner_product(f1, next.u);
    q0 = quadrature_curvature(prev.u, &f0, n0, nu);
    q1 = quadrature_curvature(next.u, &f1, n1, nu);
  }

  // Truncation of the nonlinear Duhamel integrand h(s) = E(t_{n+1} - s) N(s),
  // with h'' from the last three nonlinear evaluations (two on the first slab).
  double nonlinear_error = 0.0;
  if (prev.nonlinear && next.nonlinear) {
    SolenoidalField dd = *next.nonlinear;
    dd.axpy(-2.0, heat_semigroup(*prev.nonlinear, dt, nu));
    double curvature;
    if (prev.previous_nonlinear) {
      dd += heat_semigroup(*prev.previous_nonlinear, 2.0 * dt, nu);
      curvature = l2_norm(dd) / (dt * dt);
    } else {
      dd.axpy(1.0, heat_semigroup(*prev.nonlinear, dt, nu));
      curvature = 2.0 * l2_norm(dd) / (dt * dt);
    }
    const double weight = scheme == Scheme::imex_cn ? 5.0 / 12.0 : 1.0 / 12.0;
    nonlinear_error = 2.0 * std::max(l2_norm(prev.u), l2_norm(next.u)) * weight * dt * dt * dt * curvature;
  }

  const LedgerRow& last = prev.ledger.back();
  LedgerRow row;
  row.t = next.t;
  row.energy = std::pow(l2_norm(next.u), 2);
  row.dissipation = last.dissipation + 0.5 * dt * (d0 + d1);
  row.work = last.work + 0.5 * dt * (w0 + w1);
  row.slack = prev.ledger.initial_energy() + row.work - row.energy - row.dissipation;
  const double floor = EnergyLedger::kRelativeFloor * prev.ledger.initial_energy();
  const double previous_budget = std::max(last.allowance - floor, 0.0);
  row.allowance =
      floor + previous_budget + dt * dt * dt / 12.0 * std::max(q0, q1) + nonlinear_error;

  EnergyLedger out = prev.ledger;
  out.append(row);
  return out;
}

// -- pressure -----------------------------------------------------------------

ScalarField recover_pressure(const SimState& state, const ForcingSpec& forcing) {
  SpectralField g = divergence_of_tensor(outer_product(state.u.field(), state.u_alpha.u_alpha.field()));
  if (!forcing.is_zero()) g -= forcing.at(state.t).field();
  const SpectralField grad_part = gradient_part(g);
  const auto modes = state.u.grid().modes();
  ScalarField p(state.u.grid());
  for (std::size_t i = 0; i < modes.size(); ++i) {
    const auto& m = modes[i];
    if (m.k2 == 0.0) continue;
    Complex dot{};
    for (int d = 0; d < 3; ++d) dot += m.k[d] * grad_part.component(d)[i];
    p[i] = Complex(0.0, 1.0) * dot / m.k2;
  }
  return p;
}

}  // namespace nsalpha
