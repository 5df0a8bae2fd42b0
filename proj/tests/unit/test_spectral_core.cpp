#include <doctest.h>

#include <cmath>
#include <random>

#include "../oracles/convolution.hpp"
#include "../oracles/lattice.hpp"
#include "nsalpha/errors.hpp"
#include "nsalpha/indicator.hpp"
#include "nsalpha/log.hpp"
#include "test_util.hpp"

using namespace nsalpha;
using testutil::box;
using testutil::random_u;

TEST_CASE("cutoff follows the two-thirds rule") {
  CHECK(box(4).cutoff() == 1);
  CHECK(box(8).cutoff() == 2);
  CHECK(box(16).cutoff() == 5);
  CHECK(TorusGrid(1.0, 16, 1.0).cutoff() == 8);
  CHECK_THROWS_AS(TorusGrid(1.0, 7), std::invalid_argument);
  CHECK_THROWS_AS(TorusGrid(-1.0, 8), std::invalid_argument);
}

TEST_CASE("mode table weights and conjugates") {
  const auto g = box(8);
  double count = 0.0;
  for (std::size_t i = 0; i < g.spectral_size(); ++i) {
    const auto& m = g.mode(i);
    count += m.weight;
    if (m.z[2] == 0 || 2 * m.z[2] == g.n()) {
      CHECK(m.weight == 1.0);
      const auto& c = g.mode(g.conjugate_index(i));
      if (std::abs(m.z[0]) * 2 != g.n() && std::abs(m.z[1]) * 2 != g.n() && 2 * m.z[2] != g.n()) {
        CHECK(c.z[0] == -m.z[0]);
        CHECK(c.z[1] == -m.z[1]);
      }
    } else {
      CHECK(m.weight == 2.0);
    }
  }
  CHECK(count == doctest::Approx(512.0));
}

TEST_CASE("coefficient normalization of a plane wave") {
  const auto g = box(8);
  PhysicalScalar s(g.physical_size());
  for (std::size_t p = 0; p < s.size(); ++p) {
    double x[3];
    oracle::grid_point(8, g.length(), p, x);
    s[p] = std::sin(x[0]) + 0.5 * std::cos(2.0 * x[2]);
  }
  const auto f = to_spectral(g, s);
  const auto c = oracle::coefficient(f.coeffs(), 8, 1, 0, 0);
  CHECK(c.real() == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(c.imag() == doctest::Approx(-0.5));
  CHECK(oracle::coefficient(f.coeffs(), 8, 0, 0, 2).real() == doctest::Approx(0.25));
  CHECK(oracle::coefficient(f.coeffs(), 8, 0, 0, -2).real() == doctest::Approx(0.25));
}

TEST_CASE("transform round trip") {
  const auto g = box(16, 3.0);
  const auto u = random_u(g, 5);
  const auto back = to_spectral(g, to_physical(u.field()));
  CHECK(testutil::max_coeff_diff(back, u.field()) < 1e-14);
}

TEST_CASE("discrete Parseval for the L2 inner product") {
  const auto g = box(8, 1.7);
  const auto a = random_u(g, 1), b = random_u(g, 2);
  const auto pa = to_physical(a.field()), pb = to_physical(b.field());
  double s = 0.0;
  for (int d = 0; d < 3; ++d)
    for (std::size_t p = 0; p < pa[d].size(); ++p) s += pa[d][p] * pb[d][p];
  s *= g.volume() / static_cast<double>(g.physical_size());
  CHECK(inner_product(a.field(), b.field()) == doctest::Approx(s).epsilon(1e-12));
}

TEST_CASE("complex samples with imaginary parts are rejected") {
  const auto g = box(4);
  std::vector<Complex> z(g.physical_size(), Complex(1.0, 0.0));
  CHECK_NOTHROW(to_spectral(g, std::span<const Complex>(z)));
  z[3] = Complex(1.0, 1e-3);
  CHECK_THROWS_AS(to_spectral(g, std::span<const Complex>(z)), std::invalid_argument);
}

TEST_CASE("outer product equals direct convolution sums") {
  const auto g = box(8);
  const auto u = random_u(g, 11), w = random_u(g, 12);
  const auto t = outer_product(u.field(), w.field());
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const auto ref = oracle::convolve_product(u.component(i), w.component(j), 8, g.cutoff());
      double worst = 0.0;
      for (std::size_t k = 0; k < ref.size(); ++k)
        worst = std::max(worst, std::abs(ref[k] - t(i, j)[k]));
      CHECK(worst < 1e-14);
    }
}

TEST_CASE("Leray projection") {
  const auto g = box(16);
  SpectralField v(g);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n;
  for (int d = 0; d < 3; ++d)
    for (auto& c : v.component(d)) c = Complex(n(rng), n(rng));
  for (int d = 0; d < 3; ++d) v.component(d)[0] = 0.0;
  v.normalize();
  dealias(v);
  const auto p = leray_project(v);
  const auto q = gradient_part(v);
  CHECK(divergence_residual(p.field()) < 1e-14);
  CHECK(testutil::max_coeff_diff(leray_project(p.field()).field(), p.field()) < 1e-15);
  CHECK(std::abs(inner_product(p.field(), q)) < 1e-12 * l2_norm(v) * l2_norm(v));
  CHECK(testutil::max_coeff_diff(p.field() + q, v) < 1e-14);

  // gradients are annihilated
  ScalarField phi(g);
  for (auto& c : phi.coeffs()) c = Complex(n(rng), n(rng));
  symmetrize(g, phi.coeffs());
  dealias(phi);
  phi.coeffs()[0] = 0.0;
  CHECK(l2_norm(leray_project(gradient(phi)).field()) < 1e-13 * l2_norm(gradient(phi)));
}

TEST_CASE("checked solenoidal conversion") {
  const auto g = box(8);
  ScalarField phi(g);
  oracle::set_coefficient(phi.coeffs(), 8, 1, 1, 0, Complex(0.3, 0.1));
  oracle::set_coefficient(phi.coeffs(), 8, -1, -1, 0, Complex(0.3, -0.1));
  CHECK_THROWS_AS(SolenoidalField::checked(gradient(phi)), InvariantViolation);
  CHECK_NOTHROW(SolenoidalField::checked(random_u(g, 1).field()));
}

TEST_CASE("differential operators on a single mode") {
  const double L = 3.0;
  const auto g = box(8, L);
  const double k = 2.0 * M_PI / L;
  ScalarField s(g);
  // s = cos(2 k x2)
  oracle::set_coefficient(s.coeffs(), 8, 0, 2, 0, 0.5);
  oracle::set_coefficient(s.coeffs(), 8, 0, -2, 0, 0.5);
  const auto gs = gradient(s);
  CHECK(oracle::coefficient(gs.component(1), 8, 0, 2, 0).imag() == doctest::Approx(k));
  CHECK(std::abs(oracle::coefficient(gs.component(0), 8, 0, 2, 0)) == 0.0);
  const auto lap = laplacian(s);
  CHECK(oracle::coefficient(lap.coeffs(), 8, 0, 2, 0).real() == doctest::Approx(-2.0 * k * k));
  CHECK(sobolev_norm(gs, 0.0) == doctest::Approx(std::sqrt(L * L * L * 0.5) * 2.0 * k));
}

TEST_CASE("divergence of grad tensor is the vector laplacian") {
  const auto g = box(8);
  const auto u = random_u(g, 9);
  const auto a = divergence_of_tensor(grad_tensor(u.field()));
  const auto b = laplacian(u.field());
  CHECK(testutil::max_coeff_diff(a, b) < 1e-13);
  CHECK(std::abs(divergence(u.field()).coeffs()[1]) < 1e-15);
}

TEST_CASE("Sobolev norms") {
  const auto g = box(8);
  const auto u = random_u(g, 4);
  CHECK(sobolev_norm(u.field(), 0.0) == doctest::Approx(l2_norm(u.field())));
  const double h1 = sobolev_norm(u.field(), 1.0, SobolevKind::inhomogeneous);
  const double d1 = sobolev_norm(u.field(), 1.0);
  CHECK(h1 * h1 == doctest::Approx(d1 * d1 + std::pow(l2_norm(u.field()), 2)));
  // Poincare on the 2 pi box: ||u|| <= ||grad u||
  CHECK(l2_norm(u.field()) <= d1);
}

TEST_CASE("mean is pinned to zero") {
  const auto g = box(4);
  std::array<Coeffs, 3> c;
  for (auto& x : c) x.assign(g.spectral_size(), 0.0);
  c[0][0] = 2.0;
  log::set_level(log::Level::off);
  SpectralField f(g, c);
  log::set_level(log::Level::warning);
  CHECK(f.component(0)[0] == Complex(0.0));
}

TEST_CASE("dealiasing zeroes modes above the cutoff") {
  const auto g = box(8);
  SpectralField v(g);
  for (int d = 0; d < 3; ++d)
    for (auto& c : v.component(d)) c = 1.0;
  dealias(v);
  for (std::size_t i = 0; i < g.spectral_size(); ++i) {
    const auto& m = g.mode(i);
    const bool keep = std::abs(m.z[0]) <= 2 && std::abs(m.z[1]) <= 2 && m.z[2] <= 2;
    CHECK(m.retained == keep);
    if (!keep) CHECK(v.component(0)[i] == Complex(0.0));
  }
}

TEST_CASE("mollifier truncates by wavenumber") {
  const auto g = box(8);
  const auto phi = MollifierSpec::cutoff(1.5);
  // lattice points with |z| <= 1.5 on the 2 pi box: 1 + 6 + 12
  CHECK(phi.l2_norm(2.0 * M_PI) == doctest::Approx(std::sqrt(std::pow(2.0 * M_PI, 3) * 19.0)));
  CHECK(phi.h1_norm(2.0 * M_PI) ==
        doctest::Approx(std::sqrt(std::pow(2.0 * M_PI, 3) * (1.0 + 6.0 * 2.0 + 12.0 * 3.0))));
  CHECK(std::isinf(MollifierSpec::none().l2_norm(1.0)));
  const auto u = random_u(g, 2);
  const auto v = convolve(phi, u);
  for (std::size_t i = 0; i < g.spectral_size(); ++i) {
    const bool in = g.mode(i).k2 <= 2.25;
    CHECK(std::abs(v.component(1)[i] - (in ? u.component(1)[i] : Complex(0.0))) == 0.0);
  }
  CHECK_THROWS(MollifierSpec::cutoff(-1.0));
}

TEST_CASE("indicator coefficient stays in [beta, 1]") {
  const auto g = box(8);
  const FilterProblem p{0.7, IndicatorSpec::smooth_local(0.3, 0.5), MollifierSpec::cutoff(3.0), g};
  const auto a = coefficient_field(p, random_u(g, 6, 10.0));
  for (double x : a) {
    CHECK(x >= 0.3);
    CHECK(x <= 1.0);
  }
  CHECK(IndicatorSpec::smooth_local(0.3, 0.5).evaluate(0.0) == 1.0);
  CHECK(IndicatorSpec::smooth_local(0.3, 0.5).evaluate(0.25) ==
        doctest::Approx(0.3 + 0.7 * std::exp(-1.0)));
  CHECK_THROWS(IndicatorSpec::smooth_local(1.5, 1.0).validate());
  FilterProblem bad{1.0, IndicatorSpec::smooth_local(0.5, 1.0), MollifierSpec::none(), g};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("random fields are reproducible and solenoidal") {
  const auto g = box(8);
  const auto a = random_solenoidal(g, 42, -2.0), b = random_solenoidal(g, 42, -2.0);
  CHECK(testutil::max_coeff_diff(a.field(), b.field()) == 0.0);
  CHECK(l2_norm(a - random_solenoidal(g, 43, -2.0)) > 0.0);
  CHECK(divergence_residual(a.field()) < 1e-14);
  const auto s = shear_mode(g, 2, 1.0);
  const auto ps = to_physical(s.field());
  double x[3];
  oracle::grid_point(8, g.length(), 1, x);
  CHECK(ps[0][1] == doctest::Approx(std::sin(2.0 * x[2])));
  CHECK_THROWS(shear_mode(g, 3, 1.0));
}

TEST_CASE("mollifier norms match a brute-force lattice count") {
  for (double length : {2.3, 2.0 * M_PI, 10.0})
    for (double kappa : {0.5, 3.7, 9.0}) {
      const double unit = 2.0 * M_PI / length;
      const int zmax = static_cast<int>(kappa / unit) + 1;
      double count = 0.0, h1 = 0.0;
      for (int a = -zmax; a <= zmax; ++a)
        for (int b = -zmax; b <= zmax; ++b)
          for (int c = -zmax; c <= zmax; ++c) {
            const double k2 = unit * unit * (a * a + b * b + c * c);
            if (k2 > kappa * kappa) continue;
            count += 1.0;
            h1 += 1.0 + k2;
          }
      const auto phi = MollifierSpec::cutoff(kappa);
      const double vol = std::pow(length, 3);
      CHECK(phi.l2_norm(length) == doctest::Approx(std::sqrt(vol * count)).epsilon(1e-13));
      CHECK(phi.h1_norm(length) == doctest::Approx(std::sqrt(vol * h1)).epsilon(1e-13));
    }
}
