#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nsalpha/constants.hpp"
#include "nsalpha/evolution.hpp"
#include "nsalpha/experiments.hpp"

namespace nsalpha {

struct GridConfig {
  double length = 6.283185307179586;
  int n = 16;
  double dealias_fraction = 2.0 / 3.0;
  bool operator==(const GridConfig&) const = default;
};

struct PhysicsConfig {
  double nu = 0.1;
  double alpha = 0.5;
  double beta = 0.5;
  std::string indicator = "smooth_local";  // constant_one | smooth_local | global_energy
  double indicator_scale = 1.0;
  std::string mollifier = "cutoff";  // cutoff | none
  /// Resolved cutoff; `kappa = auto` in the text is replaced by Gr * kappa0.
  double kappa = 4.0;
  double kappa0 = 1.0;
  bool operator==(const PhysicsConfig&) const = default;
};

struct ForcingConfig {
  std::string kind = "random_shell";  // none | random_shell
  /// ||f||_{H^-1 hom}
  double amplitude = 1.0;
  double shell_min = 1.0;
  double shell_max = 3.0;
  std::uint64_t seed = 7;
  bool operator==(const ForcingConfig&) const = default;
};

struct InitialConfig {
  std::string kind = "random";  // random | shear | zero | snapshot
  std::uint64_t seed = 2024;
  double slope = -2.0;
  /// Root-mean-square velocity sqrt(||u0||^2 / L^3) for random and shear data.
  double rms = 1.0;
  int shear_mode = 1;
  std::string file;
  bool operator==(const InitialConfig&) const = default;
};

struct TimeConfig {
  double t_end = 0.5;
  double dt = 0.01;
  std::string scheme = "duhamel_picard";  // duhamel_picard | imex_cn
  double picard_tol = 1e-10;
  int picard_max_iter = 50;
  int max_halvings = 5;
  double filter_tol = 1e-10;
  int filter_max_iter = 0;
  bool operator==(const TimeConfig&) const = default;
};

struct OutputConfig {
  std::string ledger;
  std::string snapshot;
  /// Steps between snapshots; 0 writes the final state only.
  int snapshot_interval = 0;
  bool operator==(const OutputConfig&) const = default;
};

struct StudyConfig {
  std::string kind = "alpha_to_zero";
  /// Empty selects the defaults of the study kind.
  std::vector<double> values;
  std::vector<double> horizons;
  std::string output;
  bool operator==(const StudyConfig&) const = default;
};

/// Validated run configuration. Text form is INI:
///
///   [grid]     length n dealias_fraction
///   [physics]  nu alpha beta indicator indicator_scale mollifier kappa kappa0
///   [forcing]  kind amplitude shell_min shell_max seed
///   [initial]  kind seed slope rms shear_mode file
///   [time]     t_end dt scheme picard_tol picard_max_iter max_halvings
///              filter_tol filter_max_iter
///   [output]   ledger snapshot snapshot_interval
///   [study]    kind values horizons output
///
/// Lists are comma separated. Unknown sections and keys are errors.
struct RunConfig {
  GridConfig grid;
  PhysicsConfig physics;
  ForcingConfig forcing;
  InitialConfig initial;
  TimeConfig time;
  OutputConfig output;
  std::optional<StudyConfig> study;
  bool operator==(const RunConfig&) const = default;
};

/// (section.key, value) pairs applied on top of the text before validation.
using ConfigOverrides = std::vector<std::pair<std::string, std::string>>;

/// Configuration text whose study block reproduces default_study(kind).
std::string default_study_config_text(StudyKind kind);

/// Throws ConfigError listing every problem found.
RunConfig parse_config(const std::string& text, const ConfigOverrides& overrides = {});
RunConfig load_config(const std::string& path, const ConfigOverrides& overrides = {});

/// Canonical text: every key, fixed order, 17 significant digits.
std::string to_text(const RunConfig& config);

/// Splits "section.key=value"; throws ConfigError on malformed input.
std::pair<std::string, std::string> parse_override(const std::string& assignment);

// -- builders -----------------------------------------------------------------

TorusGrid make_grid(const RunConfig& config);
FilterProblem make_filter_problem(const RunConfig& config, const TorusGrid& grid);
AdvectionModel make_model(const RunConfig& config, const TorusGrid& grid);
ForcingSpec make_forcing(const RunConfig& config, const TorusGrid& grid);
/// Initial field and its time (nonzero only for snapshot data).
std::pair<SolenoidalField, double> make_initial(const RunConfig& config, const TorusGrid& grid);
StepConfig make_step_config(const RunConfig& config);
Scenario make_scenario(const RunConfig& config);
/// Requires a [study] block.
StudySpec make_study_spec(const RunConfig& config);
ModelParams make_model_params(const RunConfig& config);

}  // namespace nsalpha
