#pragma once

#include <string>

#include "nsalpha/constants.hpp"
#include "nsalpha/filter_solver.hpp"

namespace nsalpha {

/// Measured quantity against an a priori estimate.
///
/// `explicit_bound` is the constant chain with every unnamed generic
/// constant set to one; `fitted_factor` is the frozen calibration factor
/// that absorbs those constants (exactly 1 for estimates with no generic
/// constant). A violation means measured > explicit_bound * fitted_factor + slack.
struct BoundReport {
  std::string name;
  double measured = 0.0;
  double explicit_bound = 0.0;
  double fitted_factor = 1.0;
  double slack = 0.0;
  bool violated = false;

  double bound() const { return explicit_bound * fitted_factor; }
  double ratio() const { return explicit_bound > 0.0 ? measured / explicit_bound : 0.0; }
};

struct H2Report : BoundReport {
  /// ||u_alpha||_{H^2}
  double h2_norm = 0.0;
  /// Relative strong-form residual of the filter equation.
  double strong_residual = 0.0;
};

/// Constant-chain arguments implied by a filter problem on its grid.
ModelParams model_params_for(const FilterProblem& problem);

/// min(alpha^2 beta, 1)
double coercivity_constant(double alpha, double beta);

/// ||u_alpha||^2_{H^1} / ||u||^2_{L^2} against 1 / (2 min(alpha^2 beta, 1/2)).
BoundReport verify_h1_bound(const FilterProblem& problem, const SolenoidalField& u,
                            const FilterSolution& solution);

/// ||u1a - u2a||_{H^1} / ((||u2|| + 1) ||u1 - u2||) against
/// K1 = max(alpha^2 C_A ||phi||_{L^2} sqrt(K0), 1) / min(alpha^2 beta, 1).
/// Requires a cutoff mollifier.
BoundReport verify_h1_continuous_dependence(const FilterProblem& problem,
                                            const SolenoidalField& u1,
                                            const SolenoidalField& u2,
                                            const FilterOptions& options = {});

/// ||u_alpha||_{H^2} / ((||u|| + 1) ||u||) against
/// max(alpha^2 sqrt(K0) ||grad A||_inf ||phi||_{H^1}, 1) / min(alpha^2 beta, 1).
H2Report verify_h2_bound(const FilterProblem& problem, const SolenoidalField& u,
                         const FilterSolution& solution);

/// ||u1a - u2a||_{H^2} / ((||u1|| + ||u2|| + 1)^2 ||u1 - u2||) against K3.
BoundReport verify_h2_continuous_dependence(const FilterProblem& problem,
                                            const SolenoidalField& u1,
                                            const SolenoidalField& u2,
                                            const FilterOptions& options = {});

}  // namespace nsalpha
