#pragma once

#include <optional>

#include "nsalpha/indicator.hpp"
#include "nsalpha/spectral_field.hpp"

namespace nsalpha {

struct FilterOptions {
  double tolerance = 1e-10;
  /// 0 selects 10 * N^3.
  int max_iterations = 0;
};

struct FilterSolution {
  SolenoidalField u_alpha;
  int iterations = 0;
  /// ||Op(u_alpha) - P u||_{L^2} / ||u||_{L^2}
  double residual = 0.0;
  PhysicalScalar coefficient;
};

/// P(-alpha^2 div(A (grad (x) w)^T) + w) for frozen coefficient samples A.
SolenoidalField apply_filter_operator(const FilterProblem& problem,
                                      const PhysicalScalar& coefficient,
                                      const SolenoidalField& w);

/// Solve -alpha^2 div(A(phi * u) (grad (x) u_alpha)^T) + u_alpha = u,
/// div u_alpha = 0, by preconditioned conjugate gradients on the solenoidal
/// subspace. The preconditioner is the exact inverse of the Helmholtz
/// operator with the mean coefficient. Throws SolverError on non-convergence.
FilterSolution solve_filter(const FilterProblem& problem, const SolenoidalField& u,
                            const FilterOptions& options = {},
                            const SolenoidalField* initial_guess = nullptr);

/// Closed-form solution for A = 1: u_k / (1 + alpha^2 |k|^2).
SolenoidalField helmholtz_filter(const SolenoidalField& u, double alpha);

}  // namespace nsalpha
