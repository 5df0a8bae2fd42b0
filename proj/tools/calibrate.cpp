// Fits the factors absorbing the generic constants of the H^2 filter
// estimates on a fixed calibration seed set and prints them in the form of
// core/include/nsalpha/calibration.hpp.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "calibration_instances.hpp"
#include "nsalpha/filter_bounds.hpp"

using namespace nsalpha;

namespace {

// Round up to two significant digits so the frozen value is never below
// the measured maximum.
double round_up(double v) {
  if (v <= 1.0) return 1.0;
  const double p = std::pow(10.0, std::floor(std::log10(v)) - 1);
  return std::ceil(v / p) * p;
}

}  // namespace

int main(int argc, char** argv) {
  const int first = argc > 1 ? std::atoi(argv[1]) : 1;
  const int count = argc > 2 ? std::atoi(argv[2]) : 20;
  double worst_bound = 0.0;
  double worst_dep = 0.0;
  for (int s = first; s < first + count; ++s) {
    const auto inst = calib::make_instance(std::uint64_t(s));
    const FilterSolution sol = solve_filter(inst.problem, inst.u1);
    const H2Report h2 = verify_h2_bound(inst.problem, inst.u1, sol);
    const BoundReport d2 = verify_h2_continuous_dependence(inst.problem, inst.u1, inst.u2);
    worst_bound = std::max(worst_bound, h2.ratio());
    worst_dep = std::max(worst_dep, d2.ratio());
    std::printf("seed %3d  alpha %.3f beta %.3f  h2 ratio %.4e  h2-dependence ratio %.4e\n", s,
                inst.problem.alpha, inst.problem.indicator.beta, h2.ratio(), d2.ratio());
  }
  std::printf("\ninline constexpr double kH2BoundFactor = %.17g;\n", round_up(worst_bound));
  std::printf("inline constexpr double kH2DependenceFactor = %.17g;\n", round_up(worst_dep));
  return 0;
}
