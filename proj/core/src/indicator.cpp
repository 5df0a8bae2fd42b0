#include "nsalpha/indicator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "nsalpha/errors.hpp"
#include "nsalpha/spectral_ops.hpp"

namespace nsalpha {

IndicatorSpec IndicatorSpec::constant_one(double beta) {
  IndicatorSpec s{IndicatorKind::constant_one, beta, 1.0};
  s.validate();
  return s;
}

IndicatorSpec IndicatorSpec::smooth_local(double beta, double scale) {
  IndicatorSpec s{IndicatorKind::smooth_local, beta, scale};
  s.validate();
  return s;
}

IndicatorSpec IndicatorSpec::global_energy(double beta, double scale) {
  IndicatorSpec s{IndicatorKind::global_energy, beta, scale};
  s.validate();
  return s;
}

void IndicatorSpec::validate() const {
  if (!(beta > 0.0 && beta < 1.0))
    throw std::invalid_argument("indicator: beta must lie in (0, 1)");
  if (kind != IndicatorKind::constant_one && !(scale > 0.0))
    throw std::invalid_argument("indicator: scale c must be positive");
}

double IndicatorSpec::evaluate(double magnitude2) const {
  if (kind == IndicatorKind::constant_one) return 1.0;
  if (std::isinf(scale)) return 1.0;
  return beta + (1.0 - beta) * std::exp(-magnitude2 / (scale * scale));
}

double IndicatorSpec::lipschitz() const {
  if (kind == IndicatorKind::constant_one || std::isinf(scale)) return 0.0;
  // max_r (1-beta) * 2r/c^2 * exp(-r^2/c^2) at r = c / sqrt(2)
  return (1.0 - beta) * std::sqrt(2.0) * std::exp(-0.5) / scale;
}

double IndicatorSpec::gradient_lipschitz() const {
  switch (kind) {
    case IndicatorKind::constant_one:
      return 0.0;
    case IndicatorKind::smooth_local:
      if (std::isinf(scale)) return 0.0;
      // Hessian spectral radius of exp(-|v|^2/c^2) peaks at v = 0 with 2/c^2.
      return 2.0 * (1.0 - beta) / (scale * scale);
    case IndicatorKind::global_energy:
      break;
  }
  return std::numeric_limits<double>::infinity();
}

void FilterProblem::validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw std::invalid_argument("filter problem: alpha must be positive");
  indicator.validate();
  if (mollifier.kind == MollifierKind::none && indicator.kind == IndicatorKind::smooth_local)
    throw std::invalid_argument(
        "filter problem: smooth_local indicator requires a cutoff mollifier; without "
        "mollification only global_energy (or constant_one) indicators are admissible");
}

PhysicalScalar coefficient_field(const FilterProblem& problem, const SolenoidalField& u) {
  require_same_grid(problem.grid, u.grid(), "coefficient_field");
  const auto& ind = problem.indicator;
  PhysicalScalar a(problem.grid.physical_size(), 1.0);
  switch (ind.kind) {
    case IndicatorKind::constant_one:
      return a;
    case IndicatorKind::smooth_local: {
      const auto mag2 = squared_magnitude(convolve(problem.mollifier, u.field()));
      for (std::size_t x = 0; x < a.size(); ++x) a[x] = ind.evaluate(mag2[x]);
      break;
    }
    case IndicatorKind::global_energy: {
      const double n = l2_norm(convolve(problem.mollifier, u.field()));
      std::fill(a.begin(), a.end(), ind.evaluate(n * n));
      break;
    }
  }
  const auto [lo, hi] = std::minmax_element(a.begin(), a.end());
  if (*lo < ind.beta * (1.0 - 1e-14) || *hi > 1.0 + 1e-14) {
    std::ostringstream msg;
    msg << "indicator samples left [beta, 1]: min " << *lo << ", max " << *hi;
    throw InvariantViolation(msg.str());
  }
  return a;
}

}  // namespace nsalpha
