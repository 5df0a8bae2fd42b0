// Full-lattice access to half-spectrum coefficients, written against the
// documented storage layout only.
#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "nsalpha/spectral_field.hpp"

namespace oracle {

using cplx = std::complex<double>;

inline int fold(int z, int n) { return z < 0 ? z + n : z; }

// Coefficient of e^{i z.x (2pi/L)} for any z with |z_i| < N/2.
inline cplx coefficient(const nsalpha::Coeffs& c, int n, int z1, int z2, int z3) {
  const int h = n / 2 + 1;
  if (z3 < 0) return std::conj(coefficient(c, n, -z1, -z2, -z3));
  return c[(static_cast<std::size_t>(fold(z1, n)) * n + fold(z2, n)) * h + z3];
}

inline void set_coefficient(nsalpha::Coeffs& c, int n, int z1, int z2, int z3, cplx v) {
  const int h = n / 2 + 1;
  if (z3 < 0) {
    z1 = -z1; z2 = -z2; z3 = -z3; v = std::conj(v);
  }
  c[(static_cast<std::size_t>(fold(z1, n)) * n + fold(z2, n)) * h + z3] = v;
}

// Pointwise value by a direct sum over |z_i| <= zmax with an optional
// wavenumber filter |k| <= kmax.
inline double evaluate(const nsalpha::Coeffs& c, int n, double length, int zmax,
                       const double x[3], double kmax = INFINITY) {
  const double unit = 2.0 * M_PI / length;
  cplx s = 0.0;
  for (int a = -zmax; a <= zmax; ++a)
    for (int b = -zmax; b <= zmax; ++b)
      for (int d = -zmax; d <= zmax; ++d) {
        const double k2 = unit * unit * (a * a + b * b + d * d);
        if (k2 > kmax * kmax * (1 + 1e-12)) continue;
        const double phase = unit * (a * x[0] + b * x[1] + d * x[2]);
        s += coefficient(c, n, a, b, d) * cplx(std::cos(phase), std::sin(phase));
      }
  return s.real();
}

inline void grid_point(int n, double length, std::size_t idx, double x[3]) {
  const double h = length / n;
  x[2] = h * static_cast<double>(idx % n);
  x[1] = h * static_cast<double>((idx / n) % n);
  x[0] = h * static_cast<double>(idx / (static_cast<std::size_t>(n) * n));
}

}  // namespace oracle
