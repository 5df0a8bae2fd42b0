#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nsalpha/csv.hpp"
#include "nsalpha/evolution.hpp"

namespace nsalpha {

enum class StudyKind { alpha_to_zero, beta_to_one, continuous_dependence, absorbing_set, appendix_epsilon };

std::string to_string(StudyKind kind);
std::optional<StudyKind> parse_study_kind(std::string_view name);

/// Fixed data shared by every parameter point of a study.
struct Scenario {
  TorusGrid grid;
  double alpha = 0.5;
  IndicatorSpec indicator = IndicatorSpec::smooth_local(0.5, 1.0);
  MollifierSpec mollifier = MollifierSpec::cutoff(4.0);
  ForcingSpec forcing;
  SolenoidalField u0;
  double t_end = 0.5;
  StepConfig step;
  /// Seed of the perturbation directions (continuous dependence).
  std::uint64_t seed = 1;

  FilterProblem filter_problem() const { return {alpha, indicator, mollifier, grid}; }
};

struct StudySpec {
  StudyKind kind = StudyKind::alpha_to_zero;
  /// alpha, beta, delta, multiples of R^2 or epsilon, depending on kind.
  std::vector<double> values;
  /// Horizons T for the continuous-dependence fit.
  std::vector<double> horizons;
  Scenario scenario;
  double min_order = 1.0;
  double uniformity_factor = 2.0;

  /// Throws std::invalid_argument on an empty or non-monotone parameter list.
  void validate() const;
};

struct StudyResult {
  StudyKind kind = StudyKind::alpha_to_zero;
  CsvTable table{{}};
  double fitted_order = 0.0;
  double fitted_constant = 0.0;
  bool passed = false;
  std::vector<std::string> notes;

  /// "key = value" lines: study, passed, fitted_order, fitted_constant, note.
  std::string verdict_text() const;
};

/// Column order of the CSV emitted by each study kind.
std::vector<std::string> study_columns(StudyKind kind);

/// Desk-scale scenario: N = 16, L = 2 pi, T <= 1 except the absorbing-set
/// run, which needs several decay times.
Scenario default_scenario(StudyKind kind);
StudySpec default_study(StudyKind kind);

StudyResult run_study(const StudySpec& spec);
StudyResult run_alpha_to_zero(const StudySpec& spec);
StudyResult run_beta_to_one(const StudySpec& spec);
StudyResult run_continuous_dependence(const StudySpec& spec);
StudyResult run_absorbing_set(const StudySpec& spec);
StudyResult run_appendix_epsilon(const StudySpec& spec);

/// Least-squares slope of log(y) against log(x).
double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Worker threads for parameter sweeps: NSALPHA_THREADS if set, else the
/// hardware concurrency.
int worker_count();

}  // namespace nsalpha
