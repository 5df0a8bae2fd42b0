#pragma once

#include "nsalpha/grid.hpp"
#include "nsalpha/mollifier.hpp"
#include "nsalpha/spectral_field.hpp"

namespace nsalpha {

enum class IndicatorKind { constant_one, smooth_local, global_energy };

/// Indicator A(.) with beta <= A <= 1.
///
///  constant_one:  A = 1
///  smooth_local:  A(v)(x) = beta + (1 - beta) exp(-|v(x)|^2 / c^2)
///  global_energy: A(g)    = beta + (1 - beta) exp(-||g||_{L^2}^2 / c^2), uniform in x
struct IndicatorSpec {
  IndicatorKind kind = IndicatorKind::constant_one;
  double beta = 0.5;
  double scale = 1.0;  // c

  static IndicatorSpec constant_one(double beta = 0.5);
  static IndicatorSpec smooth_local(double beta, double scale);
  static IndicatorSpec global_energy(double beta, double scale);

  void validate() const;

  /// A as a function of the squared magnitude of its argument.
  double evaluate(double magnitude2) const;

  /// C_A: Lipschitz constant of A. For global_energy this is the constant in
  /// ||A(g1) - A(g2)||_inf <= C ||g1 - g2||_{L^2}.
  double lipschitz() const;
  /// C'_A: Lipschitz constant of grad A; infinite for global_energy.
  double gradient_lipschitz() const;
};

/// Filter length alpha, indicator, mollifier and grid of one elliptic
/// filter instance.
struct FilterProblem {
  double alpha = 1.0;
  IndicatorSpec indicator;
  MollifierSpec mollifier;
  TorusGrid grid;

  /// Throws std::invalid_argument on alpha <= 0, invalid indicator, or a
  /// smooth_local indicator without a mollifier.
  void validate() const;
};

/// Samples of A(phi * u) on the physical grid; every sample lies in [beta, 1].
PhysicalScalar coefficient_field(const FilterProblem& problem, const SolenoidalField& u);

}  // namespace nsalpha
