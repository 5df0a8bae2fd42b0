#pragma once

#include <limits>

namespace nsalpha {

enum class MollifierKind { cutoff, none };

/// Spectral low-pass kernel: phi_k = 1 for |k| <= kappa, 0 otherwise.
/// Kind `none` means no mollification (phi * u = u).
struct MollifierSpec {
  MollifierKind kind = MollifierKind::none;
  double kappa = std::numeric_limits<double>::infinity();

  static MollifierSpec cutoff(double kappa);
  static MollifierSpec none() { return {}; }

  /// Fourier symbol at squared wavenumber k2.
  double symbol(double k2) const;

  /// ||phi||_{L^2} = sqrt(L^3 * #{k in (2pi/L)Z^3 : |k| <= kappa}).
  /// Infinite for kind none.
  double l2_norm(double length) const;
  /// ||phi||_{H^1} = sqrt(L^3 * sum_{|k| <= kappa} (1 + |k|^2)).
  double h1_norm(double length) const;
};

}  // namespace nsalpha
