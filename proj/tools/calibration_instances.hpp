#pragma once

// Random filter instances shared by the calibration tool and the tests
// that check the frozen factors.

#include <cmath>
#include <cstdint>
#include <random>

#include "nsalpha/filter_solver.hpp"
#include "nsalpha/random_field.hpp"
#include "nsalpha/spectral_ops.hpp"

namespace nsalpha::calib {

struct Instance {
  FilterProblem problem;
  SolenoidalField u1;
  SolenoidalField u2;
};

inline SolenoidalField unit_field(const TorusGrid& grid, std::uint64_t seed, double slope) {
  SpectralField f = random_solenoidal(grid, seed, slope).field();
  dealias(f);
  f *= 1.0 / l2_norm(f);
  return SolenoidalField::checked(std::move(f));
}

inline Instance make_instance(std::uint64_t seed, int n = 8) {
  std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + 17);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double alpha = 0.1 + 1.9 * unit(rng);
  const double beta = 0.1 + 0.8 * unit(rng);
  const double scale = 0.5 + 1.5 * unit(rng);
  const double kappa = 2.0 + std::floor(3.0 * unit(rng));
  const double rms = 0.2 + 1.8 * unit(rng);
  const double rel_delta = std::pow(10.0, -1.0 - 2.0 * unit(rng));

  TorusGrid grid(2.0 * M_PI, n);
  FilterProblem p{alpha, IndicatorSpec::smooth_local(beta, scale), MollifierSpec::cutoff(kappa), grid};
  const double norm = rms * std::sqrt(grid.volume());
  SolenoidalField u1 = norm * unit_field(grid, seed, -2.0);
  SolenoidalField u2 = u1;
  u2.axpy(rel_delta * norm, unit_field(grid, seed + 7919, -1.0));
  return {p, u1, u2};
}

}  // namespace nsalpha::calib
