#pragma once

#include <cstdint>

#include "nsalpha/spectral_field.hpp"

namespace nsalpha {

/// Reproducible random divergence-free field on the retained modes with
/// coefficient envelope |u_k| ~ |k|^slope.
SolenoidalField random_solenoidal(const TorusGrid& grid, std::uint64_t seed,
                                  double spectrum_slope);

/// Random divergence-free field supported on lattice shells
/// shell_min <= |z| <= shell_max (z the integer lattice coordinate).
SolenoidalField random_solenoidal_shell(const TorusGrid& grid, std::uint64_t seed,
                                        double shell_min, double shell_max);

/// Single shear mode u = amplitude * e_1 * sin(2 pi m x_3 / L).
/// The advection term (v . grad) u vanishes for every v depending on x_3 only.
SolenoidalField shear_mode(const TorusGrid& grid, int m, double amplitude);

}  // namespace nsalpha
