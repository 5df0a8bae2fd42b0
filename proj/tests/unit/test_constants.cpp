#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "../oracles/constants_oracle.hpp"
#include "nsalpha/constants.hpp"
#include "nsalpha/filter_bounds.hpp"

using namespace nsalpha;

namespace {

ModelParams sample_params() {
  ModelParams p;
  p.alpha = 0.7;
  p.beta = 0.4;
  p.nu = 0.3;
  p.L = 2.0 * M_PI;
  p.phi_l2 = 12.0;
  p.phi_h1 = 30.0;
  p.c_a = 1.2;
  p.c_a_prime = 2.5;
  p.f_hminus1 = 0.05;
  p.f_l2 = 0.1;
  p.kappa0 = 1.0;
  p.u0_l2 = 0.2;
  p.T = 2.0;
  return p;
}

bool rel_close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

}  // namespace

TEST_CASE("K(alpha, beta) golden value and branches") {
  CHECK(k_alpha_beta(1.0, 0.25) == 32.0);
  for (double beta = 0.1; beta < 0.95; beta += 0.1) {
    const double a1 = 1.0, a2 = 1.0 / std::sqrt(beta);
    CHECK(rel_close(k_alpha_beta(a1, beta), k_alpha_beta(std::nextafter(a1, 2.0), beta), 1e-12));
    CHECK(rel_close(k_alpha_beta(a2, beta), k_alpha_beta(std::nextafter(a2, 10.0), beta), 1e-12));
    for (double a : {0.3, 1.7, 5.0}) CHECK(rel_close(k_alpha_beta(a, beta), oracle::k_ab(a, beta), 1e-15));
  }
}

TEST_CASE("closed-form scalars") {
  ModelParams p = sample_params();
  p.nu = 1.0;
  p.f_hminus1 = 1.0;
  const auto r = compute_chain(p);
  CHECK(r.eta == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(r.R2 == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(r.T_eta == doctest::Approx(4.0 * (1.0 + std::sqrt(2.0))).epsilon(1e-15));
  CHECK(k0_constant(1.0, 0.25) == 2.0);
  CHECK(k0_constant(2.0, 0.5) == 1.0);
}

TEST_CASE("chain matches the oracle") {
  for (double alpha : {0.3, 0.9, 1.5, 4.0})
    for (double beta : {0.2, 0.6}) {
      ModelParams p = sample_params();
      p.alpha = alpha;
      p.beta = beta;
      const auto r = compute_chain(p);
      const auto o = oracle::chain(alpha, beta, p.nu, p.L, p.phi_l2, p.phi_h1, p.c_a, p.c_a_prime,
                                   p.f_hminus1, p.u0_l2, p.T);
      CHECK(rel_close(r.K0, o.K0, 1e-14));
      CHECK(rel_close(r.L1, o.L1, 1e-14));
      CHECK(rel_close(r.L2, o.L2, 1e-14));
      CHECK(rel_close(r.L3, o.L3, 1e-14));
      CHECK(rel_close(r.K1, o.K1, 1e-14));
      CHECK(rel_close(r.K2, o.K2, 1e-14));
      CHECK(rel_close(r.K3, o.K3, 1e-14));
      CHECK(rel_close(r.K4, o.K4, 1e-14));
      CHECK(rel_close(r.C0, o.C0, 1e-14));
      CHECK(rel_close(r.C1, o.C1, 1e-14));
      if (std::isfinite(o.m)) {
        CHECK(r.m == o.m);
      }
      if (std::isfinite(o.D) && std::isfinite(r.D)) {
        CHECK(rel_close(r.D, o.D, 1e-10));
      }
    }
}

TEST_CASE("dimension bound stays finite in log form") {
  // tiny forcing keeps every exponent small enough to compare linear values
  ModelParams p = sample_params();
  p.alpha = 3.0;
  p.beta = 0.9;
  p.nu = 4.0;
  p.phi_l2 = 0.01;
  p.phi_h1 = 0.01;
  p.c_a_prime = 0.1;
  p.f_hminus1 = 1e-3;
  const auto d = fractal_dimension_bound(p);
  const auto o = oracle::chain(p.alpha, p.beta, p.nu, p.L, p.phi_l2, p.phi_h1, p.c_a, p.c_a_prime,
                               p.f_hminus1, p.u0_l2, p.T);
  REQUIRE(std::isfinite(o.D));
  CHECK(d.m == o.m);
  CHECK(rel_close(d.D, o.D, 1e-12));
  CHECK(rel_close(d.log10_D, std::log10(o.D), 1e-12));

  // the default chain overflows double but the logarithms remain usable
  const auto big = fractal_dimension_bound(sample_params());
  CHECK(std::isfinite(big.log10_D));
  CHECK(std::isfinite(big.log10_envelope));
}

TEST_CASE("dimension bound grows with the forcing") {
  ModelParams p = sample_params();
  double prev_d = -INFINITY, prev_env = -INFINITY;
  for (double f = 0.125; f <= 2.0; f += 0.125) {
    p.f_hminus1 = f;
    const auto d = fractal_dimension_bound(p);
    CHECK(d.log10_D >= prev_d);
    CHECK(d.log10_envelope >= prev_env);
    prev_d = d.log10_D;
    prev_env = d.log10_envelope;
  }
}

TEST_CASE("K factor scales like alpha^-5 below one") {
  std::vector<double> la, lk;
  for (double a = 0.05; a <= 1.0; a *= 1.5) {
    la.push_back(std::log(a));
    lk.push_back(std::log(k_alpha_beta(a, 0.3)));
  }
  for (std::size_t i = 1; i < la.size(); ++i)
    CHECK((lk[i] - lk[i - 1]) / (la[i] - la[i - 1]) == doctest::Approx(-5.0).epsilon(1e-12));
}

TEST_CASE("turbulence frequencies") {
  const auto t = turbulence_frequencies(2.0, 2.0, 0.5, 3.0);
  const double F = 2.0 / std::pow(2.0, 1.5);
  CHECK(t.F == doctest::Approx(F));
  CHECK(t.Gr == doctest::Approx(F * 8.0 / 0.25));
  CHECK(t.Re == doctest::Approx(std::sqrt(t.Gr)));
  CHECK(t.kappa_D == doctest::Approx(3.0 * t.Gr));
}

TEST_CASE("parameter validation names every bad field") {
  ModelParams p = sample_params();
  p.nu = -1.0;
  p.alpha = 0.0;
  try {
    p.validate();
    FAIL("expected domain_error");
  } catch (const std::domain_error& e) {
    const std::string what = e.what();
    CHECK(what.find("nu") != std::string::npos);
    CHECK(what.find("alpha") != std::string::npos);
  }
}

TEST_CASE("report serialization") {
  const auto r = compute_chain(sample_params());
  const auto text = r.to_text();
  CHECK(text.find("K_alpha_beta = ") != std::string::npos);
  CHECK(r.entries().front().first == "K0");
  const auto header = r.csv_header();
  const auto row = r.csv_row();
  CHECK(std::count(header.begin(), header.end(), ',') == std::count(row.begin(), row.end(), ','));
}

TEST_CASE("model parameters from a filter problem") {
  const TorusGrid g(2.0 * M_PI, 8);
  const FilterProblem fp{0.5, IndicatorSpec::smooth_local(0.3, 2.0), MollifierSpec::cutoff(1.5), g};
  const auto p = model_params_for(fp);
  CHECK(p.alpha == 0.5);
  CHECK(p.beta == 0.3);
  CHECK(p.phi_l2 == doctest::Approx(std::sqrt(std::pow(2.0 * M_PI, 3) * 19.0)));
  CHECK(p.c_a == doctest::Approx(fp.indicator.lipschitz()));
}
