#pragma once

#include <cmath>
#include <cstdint>

#include "nsalpha/random_field.hpp"
#include "nsalpha/spectral_ops.hpp"

namespace testutil {

inline nsalpha::TorusGrid box(int n, double length = 2.0 * M_PI) {
  return nsalpha::TorusGrid(length, n);
}

// Random retained solenoidal field with ||u||_{L^2} = norm.
inline nsalpha::SolenoidalField random_u(const nsalpha::TorusGrid& g, std::uint64_t seed,
                                         double norm = 1.0, double slope = -1.0) {
  auto u = nsalpha::random_solenoidal(g, seed, slope);
  u *= norm / nsalpha::l2_norm(u);
  return u;
}

inline double rel_l2(const nsalpha::SpectralField& a, const nsalpha::SpectralField& b) {
  return nsalpha::l2_norm(a - b) / nsalpha::l2_norm(b);
}

inline double max_coeff_diff(const nsalpha::SpectralField& a, const nsalpha::SpectralField& b) {
  double worst = 0.0;
  for (int d = 0; d < 3; ++d)
    for (std::size_t i = 0; i < a.component(d).size(); ++i)
      worst = std::max(worst, std::abs(a.component(d)[i] - b.component(d)[i]));
  return worst;
}

}  // namespace testutil
