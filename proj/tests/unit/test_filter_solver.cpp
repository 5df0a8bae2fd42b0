#include <doctest.h>

#include <cmath>

#include "../../tools/calibration_instances.hpp"
#include "../oracles/dense_filter.hpp"
#include "nsalpha/calibration.hpp"
#include "nsalpha/errors.hpp"
#include "nsalpha/filter_bounds.hpp"
#include "test_util.hpp"

using namespace nsalpha;
using testutil::box;
using testutil::random_u;

namespace {

double max_rel_coeff_error(const SolenoidalField& got, const SolenoidalField& want) {
  double scale = 0.0;
  for (int d = 0; d < 3; ++d)
    for (auto c : want.component(d)) scale = std::max(scale, std::abs(c));
  return testutil::max_coeff_diff(got.field(), want.field()) / scale;
}

}  // namespace

TEST_CASE("constant coefficient reproduces the Helmholtz multiplier") {
  const auto g = box(16);
  const auto u = random_u(g, 77, 3.0);
  for (double alpha : {0.25, 1.0, 4.0}) {
    const FilterProblem p{alpha, IndicatorSpec::constant_one(), MollifierSpec::none(), g};
    const auto sol = solve_filter(p, u);
    const auto ref = apply_multiplier(u, [alpha](const ModeInfo& m) {
      return 1.0 / (1.0 + alpha * alpha * m.k2);
    });
    CHECK(max_rel_coeff_error(sol.u_alpha, ref) < 1e-12);
    CHECK(max_rel_coeff_error(helmholtz_filter(u, alpha), ref) < 1e-15);
  }
}

TEST_CASE("PCG agrees with the dense Galerkin solve") {
  const auto g = box(4);
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const double alpha = 0.3 + 0.4 * static_cast<double>(seed);
    const double beta = 0.2 + 0.1 * static_cast<double>(seed);
    const auto u = random_u(g, seed, 2.0 + static_cast<double>(seed), 0.0);
    const FilterProblem p{alpha, IndicatorSpec::smooth_local(beta, 0.8),
                          MollifierSpec::cutoff(1.5), g};
    FilterOptions opt;
    opt.tolerance = 1e-13;
    const auto sol = solve_filter(p, u, opt);

    oracle::DenseFilterInput in;
    in.alpha = alpha;
    in.beta = beta;
    in.scale = 0.8;
    in.kappa = 1.5;
    for (int d = 0; d < 3; ++d) in.u[d] = &u.component(d);
    const auto ref = oracle::dense_filter_solve(in);
    CHECK(ref.basis_size == 52);

    const auto got = to_physical(sol.u_alpha.field());
    double num = 0.0, den = 0.0;
    for (int d = 0; d < 3; ++d)
      for (std::size_t x = 0; x < got[d].size(); ++x) {
        num += std::pow(got[d][x] - ref.u_alpha[d][x], 2);
        den += ref.u_alpha[d][x] * ref.u_alpha[d][x];
      }
    CHECK(std::sqrt(num / den) < 1e-10);
  }
}

TEST_CASE("filter operator is symmetric and coercive") {
  const auto g = box(8);
  const double alpha = 0.8, beta = 0.3;
  const FilterProblem p{alpha, IndicatorSpec::smooth_local(beta, 0.7), MollifierSpec::cutoff(2.0), g};
  const auto a = coefficient_field(p, random_u(g, 1, 6.0));
  const auto v = random_u(g, 2), w = random_u(g, 3);
  const double vw = inner_product(apply_filter_operator(p, a, v).field(), w.field());
  const double wv = inner_product(apply_filter_operator(p, a, w).field(), v.field());
  CHECK(vw == doctest::Approx(wv).epsilon(1e-12));
  const double vv = inner_product(apply_filter_operator(p, a, v).field(), v.field());
  const double h1 = sobolev_norm(v.field(), 1.0, SobolevKind::inhomogeneous);
  CHECK(vv >= coercivity_constant(alpha, beta) * h1 * h1);
  CHECK(coercivity_constant(alpha, beta) == doctest::Approx(alpha * alpha * beta));
  CHECK(coercivity_constant(3.0, 0.5) == 1.0);
}

TEST_CASE("solution satisfies the filter equation") {
  const auto g = box(8);
  const FilterProblem p{0.6, IndicatorSpec::smooth_local(0.4, 1.0), MollifierSpec::cutoff(3.0), g};
  const auto u = random_u(g, 5, 8.0);
  const auto sol = solve_filter(p, u);
  const auto op = apply_filter_operator(p, sol.coefficient, sol.u_alpha);
  CHECK(testutil::rel_l2(op.field(), u.field()) < 1e-9);
  CHECK(sol.residual < 1e-10);
  CHECK(divergence_residual(sol.u_alpha.field()) < 1e-13);

  // a warm start from the solution converges at once
  const auto again = solve_filter(p, u, {}, &sol.u_alpha);
  CHECK(again.iterations <= 1);
  CHECK(again.iterations < sol.iterations);
}

TEST_CASE("iteration cap raises SolverError") {
  const auto g = box(8);
  const FilterProblem p{2.0, IndicatorSpec::smooth_local(0.1, 0.3), MollifierSpec::cutoff(3.0), g};
  FilterOptions opt;
  opt.tolerance = 1e-14;
  opt.max_iterations = 1;
  CHECK_THROWS_AS(solve_filter(p, random_u(g, 5, 8.0), opt), SolverError);
}

TEST_CASE("energy and H1 bounds on random instances") {
  for (std::uint64_t seed = 1001; seed < 1021; ++seed) {
    const auto inst = calib::make_instance(seed);
    const auto sol = solve_filter(inst.problem, inst.u1);
    CHECK(l2_norm(sol.u_alpha.field()) <= l2_norm(inst.u1.field()) * (1.0 + 1e-8));
    const auto r = verify_h1_bound(inst.problem, inst.u1, sol);
    CHECK_FALSE(r.violated);
    CHECK(r.explicit_bound ==
          doctest::Approx(k0_constant(inst.problem.alpha, inst.problem.indicator.beta)));
  }
}

TEST_CASE("calibrated regularity estimates hold on fresh seeds") {
  double worst_h2 = 0.0, worst_h2dep = 0.0, worst_h1dep = 0.0;
  for (std::uint64_t seed = 1001; seed < 1021; ++seed) {
    const auto inst = calib::make_instance(seed);
    const auto sol = solve_filter(inst.problem, inst.u1);
    const auto h2 = verify_h2_bound(inst.problem, inst.u1, sol);
    const auto h2dep = verify_h2_continuous_dependence(inst.problem, inst.u1, inst.u2);
    const auto h1dep = verify_h1_continuous_dependence(inst.problem, inst.u1, inst.u2);
    CHECK_FALSE(h2.violated);
    CHECK_FALSE(h2dep.violated);
    CHECK_FALSE(h1dep.violated);
    CHECK(h2.strong_residual < 1e-6);
    CHECK(h2.fitted_factor == calibration::kH2BoundFactor);
    worst_h2 = std::max(worst_h2, h2.ratio());
    worst_h2dep = std::max(worst_h2dep, h2dep.ratio());
    worst_h1dep = std::max(worst_h1dep, h1dep.ratio());
  }
  MESSAGE("worst ratios h2=" << worst_h2 << " h2dep=" << worst_h2dep << " h1dep=" << worst_h1dep);
}

TEST_CASE("global-energy indicator has no H2 Lipschitz constant") {
  const auto g = box(8);
  const FilterProblem p{1.0, IndicatorSpec::global_energy(0.5, 1.0), MollifierSpec::none(), g};
  const auto u = random_u(g, 3);
  const auto sol = solve_filter(p, u);
  CHECK(sol.residual < 1e-10);
  CHECK_THROWS(verify_h2_bound(p, u, sol));
}

TEST_CASE("filtered field approaches u as alpha shrinks") {
  const auto g = box(8);
  const auto u = random_u(g, 8, 3.0);
  double prev = INFINITY;
  for (double alpha : {1.0, 0.5, 0.25, 0.125}) {
    const FilterProblem p{alpha, IndicatorSpec::smooth_local(0.5, 1.0), MollifierSpec::cutoff(2.0), g};
    const double gap = l2_norm(solve_filter(p, u).u_alpha - u);
    CHECK(gap < prev);
    prev = gap;
  }
}

TEST_CASE("invalid problems are rejected") {
  const auto g = box(8);
  const auto u = random_u(g, 1);
  FilterProblem p{-1.0, IndicatorSpec::constant_one(), MollifierSpec::none(), g};
  CHECK_THROWS_AS(solve_filter(p, u), std::invalid_argument);
  FilterProblem q{1.0, IndicatorSpec::constant_one(), MollifierSpec::none(), box(4)};
  CHECK_THROWS_AS(solve_filter(q, u), std::invalid_argument);
}
