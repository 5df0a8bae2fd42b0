#include "nsalpha/filter_solver.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "nsalpha/errors.hpp"
#include "nsalpha/spectral_ops.hpp"

namespace nsalpha {

namespace {

SolenoidalField precondition(const SolenoidalField& r, double alpha2_mean) {
  return apply_multiplier(r, [alpha2_mean](const ModeInfo& m) {
    return 1.0 / (1.0 + alpha2_mean * m.k2);
  });
}

bool is_constant(const PhysicalScalar& a) {
  for (double v : a)
    if (v != a.front()) return false;
  return true;
}

}  // namespace

SolenoidalField apply_filter_operator(const FilterProblem& problem,
                                      const PhysicalScalar& coefficient,
                                      const SolenoidalField& w) {
  require_same_grid(problem.grid, w.grid(), "apply_filter_operator");
  const double alpha2 = problem.alpha * problem.alpha;
  if (is_constant(coefficient)) {
    const double a = alpha2 * coefficient.front();
    return apply_multiplier(w, [a](const ModeInfo& m) { return 1.0 + a * m.k2; });
  }
  SpectralField flux = divergence_of_tensor(multiply(coefficient, grad_tensor(w.field())));
  flux *= -alpha2;
  flux += w.field();
  return leray_project(flux);
}

SolenoidalField helmholtz_filter(const SolenoidalField& u, double alpha) {
  const double a2 = alpha * alpha;
  return apply_multiplier(u, [a2](const ModeInfo& m) { return 1.0 / (1.0 + a2 * m.k2); });
}

FilterSolution solve_filter(const FilterProblem& problem, const SolenoidalField& u,
                            const FilterOptions& options, const SolenoidalField* initial_guess) {
  problem.validate();
  require_same_grid(problem.grid, u.grid(), "solve_filter");
  if (!(options.tolerance > 0.0)) throw std::invalid_argument("solve_filter: tolerance must be > 0");

  PhysicalScalar coefficient = coefficient_field(problem, u);
  const int n = problem.grid.n();
  const int max_iter = options.max_iterations > 0 ? options.max_iterations : 10 * n * n * n;
  const double mean_a =
      std::accumulate(coefficient.begin(), coefficient.end(), 0.0) / double(coefficient.size());
  const double alpha2_mean = problem.alpha * problem.alpha * mean_a;

  // Right-hand side restricted to the retained solenoidal modes.
  SpectralField rhs_field = u.field();
  dealias(rhs_field);
  const SolenoidalField b = leray_project(rhs_field);
  const double b_norm = l2_norm(b);
  if (b_norm == 0.0)
    return {SolenoidalField(problem.grid), 0, 0.0, std::move(coefficient)};

  SolenoidalField x = initial_guess ? *initial_guess : precondition(b, alpha2_mean);
  {
    SpectralField xf = x.field();
    dealias(xf);
    x = leray_project(xf);
  }
  SolenoidalField r = b - apply_filter_operator(problem, coefficient, x);
  double r_norm = l2_norm(r);
  int iterations = 0;
  const double target = options.tolerance * b_norm;

  // Restart from the true residual when recurrence drift stalls convergence.
  for (int restart = 0; restart < 3 && r_norm > target; ++restart) {
    SolenoidalField z = precondition(r, alpha2_mean);
    SolenoidalField p = z;
    double rz = inner_product(r.field(), z.field());
    while (r_norm > target && iterations < max_iter) {
      const SolenoidalField q = apply_filter_operator(problem, coefficient, p);
      const double pq = inner_product(p.field(), q.field());
      if (!(pq > 0.0)) break;
      const double step = rz / pq;
      x.axpy(step, p);
      r.axpy(-step, q);
      r_norm = l2_norm(r);
      ++iterations;
      if (r_norm <= target) break;
      z = precondition(r, alpha2_mean);
      const double rz_next = inner_product(r.field(), z.field());
      p *= rz_next / rz;
      p += z;
      rz = rz_next;
    }
    r = b - apply_filter_operator(problem, coefficient, x);
    r_norm = l2_norm(r);
    if (iterations >= max_iter) break;
  }

  const double relative = r_norm / b_norm;
  if (r_norm > target) {
    std::ostringstream msg;
    msg << "filter solve did not converge after " << iterations
        << " iterations; relative residual " << relative;
    throw SolverError(msg.str(), relative);
  }
  return {std::move(x), iterations, relative, std::move(coefficient)};
}

}  // namespace nsalpha
