// Product of two band-limited fields by a direct convolution sum over the
// full lattice, truncated to |z_i| <= zmax.
#pragma once

#include "lattice.hpp"

namespace oracle {

inline nsalpha::Coeffs convolve_product(const nsalpha::Coeffs& a, const nsalpha::Coeffs& b,
                                        int n, int zmax) {
  nsalpha::Coeffs out(static_cast<std::size_t>(n) * n * (n / 2 + 1), 0.0);
  for (int k1 = -zmax; k1 <= zmax; ++k1)
    for (int k2 = -zmax; k2 <= zmax; ++k2)
      for (int k3 = 0; k3 <= zmax; ++k3) {
        cplx s = 0.0;
        for (int p1 = -zmax; p1 <= zmax; ++p1)
          for (int p2 = -zmax; p2 <= zmax; ++p2)
            for (int p3 = -zmax; p3 <= zmax; ++p3) {
              const int q1 = k1 - p1, q2 = k2 - p2, q3 = k3 - p3;
              if (std::abs(q1) > zmax || std::abs(q2) > zmax || std::abs(q3) > zmax) continue;
              s += coefficient(a, n, p1, p2, p3) * coefficient(b, n, q1, q2, q3);
            }
        set_coefficient(out, n, k1, k2, k3, s);
      }
  return out;
}

}  // namespace oracle
