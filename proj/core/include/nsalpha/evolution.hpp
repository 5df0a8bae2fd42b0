#pragma once

#include <functional>
#include <optional>

#include "nsalpha/energy_ledger.hpp"
#include "nsalpha/filter_solver.hpp"
#include "nsalpha/indicator.hpp"
#include "nsalpha/spectral_field.hpp"

namespace nsalpha {

/// Advecting velocity of the nonlinear term. Without a filter problem the
/// model is Navier-Stokes and u_alpha := u.
struct AdvectionModel {
  std::optional<FilterProblem> filter;

  static AdvectionModel navier_stokes() { return {}; }
  static AdvectionModel alpha_model(FilterProblem problem) { return {std::move(problem)}; }

  bool is_navier_stokes() const { return !filter.has_value(); }
};

/// Divergence-free, zero-mean body force.
class ForcingSpec {
 public:
  using Callable = std::function<SolenoidalField(double)>;

  static ForcingSpec none(const TorusGrid& grid);
  static ForcingSpec steady(SolenoidalField f);
  /// `f(t)` must be solenoidal; its norms are cached from f(0).
  static ForcingSpec time_varying(const TorusGrid& grid, Callable f);

  bool is_steady() const { return !callable_; }
  bool is_zero() const { return is_steady() && hminus1_ == 0.0; }
  const TorusGrid& grid() const { return steady_.grid(); }

  SolenoidalField at(double t) const;
  double hminus1_norm() const { return hminus1_; }
  double l2_norm() const { return l2_; }

 private:
  explicit ForcingSpec(SolenoidalField f) : steady_(std::move(f)) {}

  SolenoidalField steady_;
  Callable callable_;
  double hminus1_ = 0.0;
  double l2_ = 0.0;
};

/// ||f||_{H^-1 hom} = sqrt(L^3 sum |k|^-2 |f_k|^2).
double hminus1_norm(const SpectralField& f);

/// Random steady forcing on the lattice shells [shell_min, shell_max],
/// scaled so that ||f||_{H^-1 hom} = amplitude.
ForcingSpec random_shell_forcing(const TorusGrid& grid, std::uint64_t seed, double shell_min,
                                 double shell_max, double amplitude);

enum class Scheme { duhamel_picard, imex_cn };

struct StepConfig {
  double dt = 0.01;
  double nu = 0.1;
  /// Relative tolerance in the slab energy norm.
  double picard_tol = 1e-10;
  int picard_max_iter = 50;
  Scheme scheme = Scheme::duhamel_picard;
  int max_halvings = 5;
  FilterOptions filter;

  /// Throws std::invalid_argument on dt <= 0, nu <= 0 or bad iteration limits.
  void validate() const;
};

struct StepDiagnostics {
  int picard_iterations = 0;
  /// Largest ratio of successive Picard increments in the slab norm.
  double contraction_factor = 0.0;
  int filter_iterations = 0;
  int halvings = 0;
  double cfl = 0.0;
};

struct SimState {
  double t = 0.0;
  SolenoidalField u;
  FilterSolution u_alpha;
  EnergyLedger ledger;
  /// P div(u (x) u_alpha) at t, and at the previous step for multistep schemes.
  std::optional<SolenoidalField> nonlinear;
  std::optional<SolenoidalField> previous_nonlinear;
  StepDiagnostics diagnostics;
};

/// e^{nu tau Laplacian} v.
SpectralField heat_semigroup(const SpectralField& v, double tau, double nu);
SolenoidalField heat_semigroup(const SolenoidalField& v, double tau, double nu);

/// P div(u (x) u_alpha) = P((u_alpha . grad) u).
SolenoidalField nonlinear_term(const SolenoidalField& u, const SolenoidalField& u_alpha);

/// Filtered velocity of `u` under the model (u itself for Navier-Stokes).
FilterSolution filtered_velocity(const AdvectionModel& model, const SolenoidalField& u,
                                 const FilterOptions& options = {},
                                 const SolenoidalField* initial_guess = nullptr);

SimState initial_state(SolenoidalField u0, const AdvectionModel& model,
                       const FilterOptions& options = {}, double t0 = 0.0);

/// One slab of the exponential-trapezoid Duhamel formulation solved by
/// Picard iteration. Throws ContractionError when the iteration does not
/// contract; no halving is attempted here.
SimState step_duhamel_picard(const SimState& state, const StepConfig& config,
                             const ForcingSpec& forcing, const AdvectionModel& model);

/// Crank-Nicolson on the viscous term, Adams-Bashforth-2 on the nonlinear
/// term. The first step falls back to one Picard slab.
SimState step_imex_cn(const SimState& state, const StepConfig& config,
                      const ForcingSpec& forcing, const AdvectionModel& model);

/// Advances by config.dt with the configured scheme, halving the slab on
/// contraction failure up to config.max_halvings times.
SimState step(const SimState& state, const StepConfig& config, const ForcingSpec& forcing,
              const AdvectionModel& model);

/// Ledger row for the slab from `prev` to `next`, appended to a copy of
/// prev.ledger. Throws InvariantViolation on a negative slack beyond the
/// allowance: 1e-6 ||u0||^2 plus the accumulated per-slab trapezoid and
/// nonlinear truncation estimates of the scheme that produced `next`.
EnergyLedger update_energy_ledger(const SimState& prev, const SimState& next,
                                  const ForcingSpec& forcing, double nu,
                                  Scheme scheme = Scheme::duhamel_picard);

/// Zero-mean pressure with grad P = -(I - P)((u_alpha . grad) u - f).
ScalarField recover_pressure(const SimState& state, const ForcingSpec& forcing);

}  // namespace nsalpha
