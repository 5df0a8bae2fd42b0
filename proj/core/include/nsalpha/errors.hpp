#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace nsalpha {

/// Invalid or inconsistent run configuration. Carries every problem found,
/// not just the first.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

/// A numerical solver failed to reach its tolerance.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double final_residual)
      : std::runtime_error(what), final_residual_(final_residual) {}
  double final_residual() const { return final_residual_; }

 private:
  double final_residual_;
};

/// The Picard iteration on a time slab did not contract.
class ContractionError : public SolverError {
 public:
  ContractionError(const std::string& what, double contraction_factor)
      : SolverError(what, contraction_factor) {}
  double contraction_factor() const { return final_residual(); }
};

/// A mathematical invariant (energy inequality, solenoidality, bound) failed.
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or incompatible snapshot file.
class SnapshotError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nsalpha
