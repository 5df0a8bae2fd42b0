#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "nsalpha/grid.hpp"

namespace nsalpha {

using Coeffs = std::vector<Complex>;

/// Real samples on the N^3 physical grid, row-major (x1 slowest).
using PhysicalScalar = std::vector<double>;
using PhysicalVector = std::array<PhysicalScalar, 3>;

/// Fourier coefficients of a real scalar function on the torus, normalized
/// so that f(x) = sum_k c_k e^{ik.x}. The mean is unrestricted.
class ScalarField {
 public:
  explicit ScalarField(TorusGrid grid);
  ScalarField(TorusGrid grid, Coeffs coeffs);

  const TorusGrid& grid() const { return grid_; }
  const Coeffs& coeffs() const { return coeffs_; }
  Coeffs& coeffs() { return coeffs_; }
  Complex operator[](std::size_t i) const { return coeffs_[i]; }
  Complex& operator[](std::size_t i) { return coeffs_[i]; }

  ScalarField& operator+=(const ScalarField& other);
  ScalarField& operator-=(const ScalarField& other);
  ScalarField& operator*=(double s);

 private:
  TorusGrid grid_;
  Coeffs coeffs_;
};

/// Zero-mean real vector field on the torus in spectral form.
///
/// The k = 0 coefficient is pinned to zero: constructing or normalizing a
/// field whose mean is nonzero re-zeros it and logs a warning.
class SpectralField {
 public:
  explicit SpectralField(TorusGrid grid);
  SpectralField(TorusGrid grid, std::array<Coeffs, 3> components);

  const TorusGrid& grid() const { return grid_; }
  const Coeffs& component(int i) const { return components_[i]; }
  Coeffs& component(int i) { return components_[i]; }

  /// Re-zero the mean (warning if it was nonzero) and symmetrize the planes
  /// whose conjugate partners are stored.
  void normalize();

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(double s);
  /// this += s * other
  SpectralField& axpy(double s, const SpectralField& other);

 private:
  void pin_mean(bool warn);

  TorusGrid grid_;
  std::array<Coeffs, 3> components_;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double s, SpectralField a);

/// A SpectralField known to be divergence-free. Only obtainable by
/// projection or by a checked conversion.
class SolenoidalField {
 public:
  /// Relative tolerance for the divergence check.
  static constexpr double kDivergenceTolerance = 1e-12;

  explicit SolenoidalField(TorusGrid grid) : field_(std::move(grid)) {}

  /// Throws InvariantViolation if `field` is not divergence-free.
  static SolenoidalField checked(SpectralField field);
  /// Wraps without checking; callers guarantee k . u_k = 0.
  static SolenoidalField trusted(SpectralField field);

  const SpectralField& field() const { return field_; }
  operator const SpectralField&() const { return field_; }  // NOLINT
  const TorusGrid& grid() const { return field_.grid(); }
  const Coeffs& component(int i) const { return field_.component(i); }

  SolenoidalField& operator+=(const SolenoidalField& other);
  SolenoidalField& operator-=(const SolenoidalField& other);
  SolenoidalField& operator*=(double s);
  SolenoidalField& axpy(double s, const SolenoidalField& other);

 private:
  explicit SolenoidalField(SpectralField f) : field_(std::move(f)) {}
  SpectralField field_;
};

SolenoidalField operator+(SolenoidalField a, const SolenoidalField& b);
SolenoidalField operator-(SolenoidalField a, const SolenoidalField& b);
SolenoidalField operator*(double s, SolenoidalField a);

/// 3x3 tensor of scalar fields; entry (i, j) is row i, column j.
struct TensorField {
  explicit TensorField(const TorusGrid& grid);
  std::array<std::array<ScalarField, 3>, 3> entries;
  const ScalarField& operator()(int i, int j) const { return entries[i][j]; }
  ScalarField& operator()(int i, int j) { return entries[i][j]; }
};

}  // namespace nsalpha
