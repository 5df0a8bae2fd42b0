#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>

namespace nsalpha {

using Complex = std::complex<double>;

/// Per-mode data for one entry of the half-spectrum layout.
struct ModeInfo {
  int z[3];          // integer lattice coordinates
  double k[3];       // physical wavevector (2*pi/L) * z
  double k2;         // |k|^2
  bool retained;     // survives the dealiasing truncation
  double weight;     // multiplicity in full-spectrum sums (1 or 2)
};

/// The periodic box [0,L]^3 sampled with N points per axis.
///
/// Spectral storage is the half-spectrum layout of a real-to-complex FFT:
/// index = (i1 * N + i2) * (N/2 + 1) + i3, with z3 = i3 >= 0 and
/// z1, z2 folded into (-N/2, N/2]. Modes with max |z_i| above
/// floor(dealias_fraction * N / 2) are not retained.
///
/// Copies share the precomputed tables and FFT plans.
class TorusGrid {
 public:
  TorusGrid(double length, int n, double dealias_fraction = 2.0 / 3.0);

  double length() const;
  int n() const;
  double dealias_fraction() const;
  int cutoff() const;
  double wavenumber_unit() const;
  double volume() const;

  std::size_t spectral_size() const;
  std::size_t physical_size() const;

  std::span<const ModeInfo> modes() const;
  const ModeInfo& mode(std::size_t index) const { return modes()[index]; }

  /// Spectral index of -k for an index on the z3 = 0 or Nyquist planes,
  /// where the conjugate partner lives in storage.
  std::size_t conjugate_index(std::size_t index) const;
  /// Largest |k|^2 among retained modes.
  double max_retained_k2() const;

  /// Unnormalized forward transform: spectral[k] = sum_x physical[x] e^{-ik.x}.
  void forward(std::span<const double> physical, std::span<Complex> spectral) const;
  /// Inverse transform: physical[x] = sum_k spectral[k] e^{ik.x}.
  void inverse(std::span<const Complex> spectral, std::span<double> physical) const;

  bool operator==(const TorusGrid& other) const;
  bool operator!=(const TorusGrid& other) const { return !(*this == other); }

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

/// Throws std::invalid_argument when the two grids differ.
void require_same_grid(const TorusGrid& a, const TorusGrid& b, const char* context);

}  // namespace nsalpha
