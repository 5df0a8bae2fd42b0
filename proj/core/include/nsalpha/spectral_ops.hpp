#pragma once

#include <complex>
#include <cstdint>
#include <span>

#include "nsalpha/mollifier.hpp"
#include "nsalpha/spectral_field.hpp"

namespace nsalpha {

// -- reality and truncation -------------------------------------------------

/// Enforce conj(c_k) = c_{-k} on the storage planes that hold both partners.
void symmetrize(const TorusGrid& grid, Coeffs& coeffs);

void dealias(const TorusGrid& grid, Coeffs& coeffs);
void dealias(ScalarField& f);
void dealias(SpectralField& f);

// -- transforms -------------------------------------------------------------

PhysicalScalar to_physical(const ScalarField& f);
PhysicalVector to_physical(const SpectralField& f);

/// Forward transform of real samples (not truncated).
ScalarField to_spectral(const TorusGrid& grid, std::span<const double> samples);
SpectralField to_spectral(const TorusGrid& grid, const PhysicalVector& samples);
/// Complex samples are accepted only when their imaginary parts vanish to
/// `imag_tolerance` relative to the largest modulus; otherwise throws.
ScalarField to_spectral(const TorusGrid& grid, std::span<const Complex> samples,
                        double imag_tolerance = 1e-12);

// -- inner products and norms -----------------------------------------------

/// L^2 inner product L^3 sum_k Re(a_k conj(b_k)).
double inner_product(const ScalarField& a, const ScalarField& b);
double inner_product(const SpectralField& a, const SpectralField& b);

double l2_norm(const SpectralField& f);

enum class SobolevKind { homogeneous, inhomogeneous };

/// Homogeneous: L^3 sum |k|^{2s} |u_k|^2 (k = 0 excluded).
/// Inhomogeneous: L^3 sum (1 + |k|^2)^s |u_k|^2. Returns the norm, not its square.
double sobolev_norm(const SpectralField& f, double s,
                    SobolevKind kind = SobolevKind::homogeneous);
double sobolev_norm(const ScalarField& f, double s,
                    SobolevKind kind = SobolevKind::homogeneous);

/// max_k |(k/|k|) . u_k| relative to the coefficient l2 norm.
double divergence_residual(const SpectralField& f);

// -- projections and differential operators ---------------------------------

SolenoidalField leray_project(const SpectralField& v);
/// (I - P) v, the gradient part of the Helmholtz decomposition.
SpectralField gradient_part(const SpectralField& v);

SpectralField gradient(const ScalarField& phi);
ScalarField divergence(const SpectralField& v);

/// Entry (i, j) = d_j v_i, i.e. the transpose of grad (x) v.
TensorField grad_tensor(const SpectralField& v);
/// (div T)_i = sum_j d_j T(i, j).
SpectralField divergence_of_tensor(const TensorField& t);
SpectralField laplacian(const SpectralField& v);
ScalarField laplacian(const ScalarField& f);

/// Multiply every coefficient by a real symbol evaluated per mode.
template <class Symbol>
SpectralField apply_multiplier(SpectralField v, Symbol&& symbol) {
  const auto modes = v.grid().modes();
  for (int d = 0; d < 3; ++d) {
    auto& c = v.component(d);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] *= symbol(modes[i]);
  }
  return v;
}

template <class Symbol>
SolenoidalField apply_multiplier(const SolenoidalField& v, Symbol&& symbol) {
  return SolenoidalField::trusted(apply_multiplier(v.field(), std::forward<Symbol>(symbol)));
}

/// (phi * v)_k = phi_k v_k.
SpectralField convolve(const MollifierSpec& phi, const SpectralField& v);
SolenoidalField convolve(const MollifierSpec& phi, const SolenoidalField& v);

// -- physical-space products (dealiased) ------------------------------------

/// (u (x) w)(i, j) = u_i w_j, computed pointwise and truncated.
TensorField outer_product(const SpectralField& u, const SpectralField& w);
/// a(x) * T(x) pointwise, truncated.
TensorField multiply(const PhysicalScalar& a, const TensorField& t);
/// Pointwise |v(x)|^2 samples.
PhysicalScalar squared_magnitude(const SpectralField& v);

}  // namespace nsalpha
