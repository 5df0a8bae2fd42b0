#include "nsalpha/random_field.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "nsalpha/spectral_ops.hpp"

namespace nsalpha {

namespace {

template <class Envelope>
SolenoidalField random_with_envelope(const TorusGrid& grid, std::uint64_t seed,
                                     Envelope&& envelope) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto modes = grid.modes();
  SpectralField f(grid);
  // Draw for every mode in storage order so the stream is layout-stable.
  for (std::size_t i = 0; i < modes.size(); ++i) {
    Complex draw[3];
    for (auto& c : draw) {
      const double re = normal(rng);
      const double im = normal(rng);
      c = Complex(re, im);
    }
    const auto& m = modes[i];
    if (!m.retained || m.k2 == 0.0) continue;
    const double amp = envelope(m);
    for (int d = 0; d < 3; ++d) f.component(d)[i] = amp * draw[d];
  }
  for (int d = 0; d < 3; ++d) symmetrize(grid, f.component(d));
  return leray_project(f);
}

}  // namespace

SolenoidalField random_solenoidal(const TorusGrid& grid, std::uint64_t seed,
                                  double spectrum_slope) {
  return random_with_envelope(grid, seed, [spectrum_slope](const ModeInfo& m) {
    return std::pow(std::sqrt(m.k2), spectrum_slope);
  });
}

SolenoidalField random_solenoidal_shell(const TorusGrid& grid, std::uint64_t seed,
                                        double shell_min, double shell_max) {
  if (shell_max < shell_min) throw std::invalid_argument("random_solenoidal_shell: empty shell");
  return random_with_envelope(grid, seed, [=](const ModeInfo& m) {
    const double r = std::sqrt(double(m.z[0] * m.z[0] + m.z[1] * m.z[1] + m.z[2] * m.z[2]));
    return (r >= shell_min - 1e-12 && r <= shell_max + 1e-12) ? 1.0 : 0.0;
  });
}

SolenoidalField shear_mode(const TorusGrid& grid, int m, double amplitude) {
  if (m <= 0 || m > grid.cutoff())
    throw std::invalid_argument("shear_mode: wavenumber must lie in [1, cutoff]");
  SpectralField f(grid);
  const auto modes = grid.modes();
  for (std::size_t i = 0; i < modes.size(); ++i) {
    const auto& md = modes[i];
    // sin(theta) = (e^{i theta} - e^{-i theta}) / (2i); z3 >= 0 half stores +m only
    if (md.z[0] == 0 && md.z[1] == 0 && md.z[2] == m)
      f.component(0)[i] = Complex(0.0, -0.5 * amplitude);
  }
  return SolenoidalField::checked(std::move(f));
}

}  // namespace nsalpha
