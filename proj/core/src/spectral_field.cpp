#include "nsalpha/spectral_field.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "nsalpha/errors.hpp"
#include "nsalpha/log.hpp"
#include "nsalpha/spectral_ops.hpp"

namespace nsalpha {

namespace {

void require_size(const TorusGrid& grid, const Coeffs& c) {
  if (c.size() != grid.spectral_size())
    throw std::invalid_argument("coefficient array does not match grid spectral size");
}

}  // namespace

ScalarField::ScalarField(TorusGrid grid)
    : grid_(std::move(grid)), coeffs_(grid_.spectral_size(), Complex{}) {}

ScalarField::ScalarField(TorusGrid grid, Coeffs coeffs)
    : grid_(std::move(grid)), coeffs_(std::move(coeffs)) {
  require_size(grid_, coeffs_);
}

ScalarField& ScalarField::operator+=(const ScalarField& other) {
  require_same_grid(grid_, other.grid_, "ScalarField +=");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& other) {
  require_same_grid(grid_, other.grid_, "ScalarField -=");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

ScalarField& ScalarField::operator*=(double s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

SpectralField::SpectralField(TorusGrid grid) : grid_(std::move(grid)) {
  for (auto& c : components_) c.assign(grid_.spectral_size(), Complex{});
}

SpectralField::SpectralField(TorusGrid grid, std::array<Coeffs, 3> components)
    : grid_(std::move(grid)), components_(std::move(components)) {
  for (const auto& c : components_) require_size(grid_, c);
  pin_mean(true);
}

void SpectralField::pin_mean(bool warn) {
  double mean = 0.0;
  double scale = 0.0;
  for (auto& c : components_) {
    mean = std::max(mean, std::abs(c[0]));
    for (const auto& x : c) scale = std::max(scale, std::abs(x));
    c[0] = Complex{};
  }
  // roundoff from a forward transform is not worth a warning
  if (warn && mean > 1e-12 * scale) {
    std::ostringstream msg;
    msg << "nonzero mean " << mean << " written to a zero-mean field; re-zeroed";
    log::warning(msg.str());
  }
}

void SpectralField::normalize() {
  pin_mean(true);
  for (auto& c : components_) symmetrize(grid_, c);
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  require_same_grid(grid_, other.grid_, "SpectralField +=");
  for (int d = 0; d < 3; ++d)
    for (std::size_t i = 0; i < components_[d].size(); ++i)
      components_[d][i] += other.components_[d][i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  require_same_grid(grid_, other.grid_, "SpectralField -=");
  for (int d = 0; d < 3; ++d)
    for (std::size_t i = 0; i < components_[d].size(); ++i)
      components_[d][i] -= other.components_[d][i];
  return *this;
}

SpectralField& SpectralField::operator*=(double s) {
  for (auto& c : components_)
    for (auto& v : c) v *= s;
  return *this;
}

SpectralField& SpectralField::axpy(double s, const SpectralField& other) {
  require_same_grid(grid_, other.grid_, "SpectralField axpy");
  for (int d = 0; d < 3; ++d)
    for (std::size_t i = 0; i < components_[d].size(); ++i)
      components_[d][i] += s * other.components_[d][i];
  return *this;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(double s, SpectralField a) { return a *= s; }

SolenoidalField SolenoidalField::checked(SpectralField field) {
  const double residual = divergence_residual(field);
  if (residual > kDivergenceTolerance) {
    std::ostringstream msg;
    msg << "field is not solenoidal: relative divergence residual " << residual;
    throw InvariantViolation(msg.str());
  }
  return SolenoidalField(std::move(field));
}

SolenoidalField SolenoidalField::trusted(SpectralField field) {
  return SolenoidalField(std::move(field));
}

SolenoidalField& SolenoidalField::operator+=(const SolenoidalField& other) {
  field_ += other.field_;
  return *this;
}
SolenoidalField& SolenoidalField::operator-=(const SolenoidalField& other) {
  field_ -= other.field_;
  return *this;
}
SolenoidalField& SolenoidalField::operator*=(double s) {
  field_ *= s;
  return *this;
}
SolenoidalField& SolenoidalField::axpy(double s, const SolenoidalField& other) {
  field_.axpy(s, other.field_);
  return *this;
}

SolenoidalField operator+(SolenoidalField a, const SolenoidalField& b) { return a += b; }
SolenoidalField operator-(SolenoidalField a, const SolenoidalField& b) { return a -= b; }
SolenoidalField operator*(double s, SolenoidalField a) { return a *= s; }

namespace {
std::array<std::array<ScalarField, 3>, 3> make_entries(const TorusGrid& g) {
  auto row = [&g] { return std::array<ScalarField, 3>{ScalarField(g), ScalarField(g), ScalarField(g)}; };
  return {row(), row(), row()};
}
}  // namespace

TensorField::TensorField(const TorusGrid& grid) : entries(make_entries(grid)) {}

}  // namespace nsalpha
