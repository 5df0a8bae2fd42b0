#include "nsalpha/spectral_ops.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace nsalpha {

namespace {

constexpr Complex kI{0.0, 1.0};

bool on_stored_conjugate_plane(const TorusGrid& grid, const ModeInfo& m) {
  return m.z[2] == 0 || m.z[2] == grid.n() / 2;
}

}  // namespace

// -- MollifierSpec ----------------------------------------------------------

MollifierSpec MollifierSpec::cutoff(double kappa) {
  if (!(kappa >= 0.0)) throw std::invalid_argument("MollifierSpec: kappa must be >= 0");
  return {MollifierKind::cutoff, kappa};
}

double MollifierSpec::symbol(double k2) const {
  if (kind == MollifierKind::none || std::isinf(kappa)) return 1.0;
  return k2 <= kappa * kappa * (1.0 + 1e-12) ? 1.0 : 0.0;
}

namespace {
// Count and second moment of the lattice points z in Z^3 with
// (2pi/L)|z| <= kappa, one column of z3 values per (z1, z2).
struct LatticeMoments {
  double count = 0.0;
  double sum_z2 = 0.0;
};

LatticeMoments lattice_moments(double kappa, double length) {
  const double unit = 2.0 * std::numbers::pi / length;
  const double r2 = (kappa / unit) * (kappa / unit) * (1.0 + 1e-12);
  const auto zmax = static_cast<long long>(std::floor(std::sqrt(r2)));
  LatticeMoments m;
  for (long long a = 0; a <= zmax; ++a) {
    for (long long b = 0; b <= zmax; ++b) {
      const double rem = r2 - static_cast<double>(a * a + b * b);
      if (rem < 0.0) break;
      auto c = static_cast<long long>(std::floor(std::sqrt(rem)));
      while (static_cast<double>((c + 1) * (c + 1)) <= rem) ++c;
      while (c > 0 && static_cast<double>(c * c) > rem) --c;
      const double mult = (a > 0 ? 2.0 : 1.0) * (b > 0 ? 2.0 : 1.0);
      const double cd = static_cast<double>(c);
      const double ab2 = static_cast<double>(a * a + b * b);
      m.count += mult * (2.0 * cd + 1.0);
      // sum over |z3| <= c of (a^2 + b^2 + z3^2)
      m.sum_z2 += mult * ((2.0 * cd + 1.0) * ab2 + cd * (cd + 1.0) * (2.0 * cd + 1.0) / 3.0);
    }
  }
  return m;
}
}  // namespace

double MollifierSpec::l2_norm(double length) const {
  if (kind == MollifierKind::none || std::isinf(kappa))
    return std::numeric_limits<double>::infinity();
  return std::sqrt(std::pow(length, 3) * lattice_moments(kappa, length).count);
}

double MollifierSpec::h1_norm(double length) const {
  if (kind == MollifierKind::none || std::isinf(kappa))
    return std::numeric_limits<double>::infinity();
  const double unit = 2.0 * std::numbers::pi / length;
  const auto m = lattice_moments(kappa, length);
  return std::sqrt(std::pow(length, 3) * (m.count + unit * unit * m.sum_z2));
}

// -- reality and truncation -------------------------------------------------

void symmetrize(const TorusGrid& grid, Coeffs& coeffs) {
  const auto modes = grid.modes();
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (!on_stored_conjugate_plane(grid, modes[i])) continue;
    const std::size_t j = grid.conjugate_index(i);
    if (j == i) {
      coeffs[i] = Complex(coeffs[i].real(), 0.0);
    } else if (i < j) {
      const Complex avg = 0.5 * (coeffs[i] + std::conj(coeffs[j]));
      coeffs[i] = avg;
      coeffs[j] = std::conj(avg);
    }
  }
}

void dealias(const TorusGrid& grid, Coeffs& coeffs) {
  const auto modes = grid.modes();
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (!modes[i].retained) coeffs[i] = Complex{};
}

void dealias(ScalarField& f) { dealias(f.grid(), f.coeffs()); }

void dealias(SpectralField& f) {
  for (int d = 0; d < 3; ++d) dealias(f.grid(), f.component(d));
}

// -- transforms -------------------------------------------------------------

PhysicalScalar to_physical(const ScalarField& f) {
  PhysicalScalar out(f.grid().physical_size());
  f.grid().inverse(f.coeffs(), out);
  return out;
}

PhysicalVector to_physical(const SpectralField& f) {
  PhysicalVector out;
  for (int d = 0; d < 3; ++d) {
    out[d].resize(f.grid().physical_size());
    f.grid().inverse(f.component(d), out[d]);
  }
  return out;
}

ScalarField to_spectral(const TorusGrid& grid, std::span<const double> samples) {
  if (samples.size() != grid.physical_size())
    throw std::invalid_argument("to_spectral: sample count does not match grid");
  ScalarField out(grid);
  grid.forward(samples, out.coeffs());
  const double scale = 1.0 / static_cast<double>(grid.physical_size());
  for (auto& c : out.coeffs()) c *= scale;
  symmetrize(grid, out.coeffs());
  return out;
}

SpectralField to_spectral(const TorusGrid& grid, const PhysicalVector& samples) {
  std::array<Coeffs, 3> comps;
  for (int d = 0; d < 3; ++d) comps[d] = to_spectral(grid, std::span<const double>(samples[d])).coeffs();
  return SpectralField(grid, std::move(comps));
}

ScalarField to_spectral(const TorusGrid& grid, std::span<const Complex> samples,
                        double imag_tolerance) {
  if (samples.size() != grid.physical_size())
    throw std::invalid_argument("to_spectral: sample count does not match grid");
  double max_abs = 0.0;
  double max_imag = 0.0;
  for (const auto& s : samples) {
    max_abs = std::max(max_abs, std::abs(s));
    max_imag = std::max(max_imag, std::abs(s.imag()));
  }
  if (max_imag > imag_tolerance * std::max(max_abs, 1e-300)) {
    std::ostringstream msg;
    msg << "to_spectral: samples are not real (max |imag| = " << max_imag << ")";
    throw std::invalid_argument(msg.str());
  }
  PhysicalScalar real(samples.size());
  std::transform(samples.begin(), samples.end(), real.begin(),
                 [](const Complex& c) { return c.real(); });
  return to_spectral(grid, std::span<const double>(real));
}

// -- inner products and norms -----------------------------------------------

namespace {
double weighted_dot(const TorusGrid& grid, const Coeffs& a, const Coeffs& b) {
  const auto modes = grid.modes();
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    sum += modes[i].weight * (a[i].real() * b[i].real() + a[i].imag() * b[i].imag());
  return sum;
}

double sobolev_sum(const TorusGrid& grid, const Coeffs& c, double s, SobolevKind kind) {
  const auto modes = grid.modes();
  double sum = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double mag2 = std::norm(c[i]);
    if (mag2 == 0.0) continue;
    double w;
    if (kind == SobolevKind::homogeneous) {
      if (modes[i].k2 == 0.0) continue;
      w = s == 0.0 ? 1.0 : std::pow(modes[i].k2, s);
    } else {
      w = s == 0.0 ? 1.0 : std::pow(1.0 + modes[i].k2, s);
    }
    sum += modes[i].weight * w * mag2;
  }
  return sum;
}
}  // namespace

double inner_product(const ScalarField& a, const ScalarField& b) {
  require_same_grid(a.grid(), b.grid(), "inner_product");
  return a.grid().volume() * weighted_dot(a.grid(), a.coeffs(), b.coeffs());
}

double inner_product(const SpectralField& a, const SpectralField& b) {
  require_same_grid(a.grid(), b.grid(), "inner_product");
  double sum = 0.0;
  for (int d = 0; d < 3; ++d) sum += weighted_dot(a.grid(), a.component(d), b.component(d));
  return a.grid().volume() * sum;
}

double l2_norm(const SpectralField& f) { return std::sqrt(std::max(0.0, inner_product(f, f))); }

double sobolev_norm(const SpectralField& f, double s, SobolevKind kind) {
  double sum = 0.0;
  for (int d = 0; d < 3; ++d) sum += sobolev_sum(f.grid(), f.component(d), s, kind);
  return std::sqrt(f.grid().volume() * sum);
}

double sobolev_norm(const ScalarField& f, double s, SobolevKind kind) {
  return std::sqrt(f.grid().volume() * sobolev_sum(f.grid(), f.coeffs(), s, kind));
}

double divergence_residual(const SpectralField& f) {
  const auto modes = f.grid().modes();
  double worst = 0.0;
  double norm2 = 0.0;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    const auto& m = modes[i];
    Complex dot{};
    for (int d = 0; d < 3; ++d) {
      dot += m.k[d] * f.component(d)[i];
      norm2 += m.weight * std::norm(f.component(d)[i]);
    }
    if (m.k2 > 0.0) worst = std::max(worst, std::abs(dot) / std::sqrt(m.k2));
  }
  if (norm2 == 0.0) return 0.0;
  return worst / std::sqrt(norm2);
}

// -- projections and differential operators ---------------------------------

SolenoidalField leray_project(const SpectralField& v) {
  SpectralField out = v;
  const auto modes = v.grid().modes();
  for (std::size_t i = 0; i < modes.size(); ++i) {
    const auto& m = modes[i];
    if (m.k2 == 0.0) {
      for (int d = 0; d < 3; ++d) out.component(d)[i] = Complex{};
      continue;
    }
    Complex dot{};
    for (int d = 0; d < 3; ++d) dot += m.k[d] * v.component(d)[i];
    const Complex factor = dot / m.k2;
    for (int d = 0; d < 3; ++d) out.component(d)[i] -= factor * m.k[d];
  }
  return SolenoidalField::trusted(std::move(out));
}

SpectralField gradient_part(const SpectralField& v) {
  return v - leray_project(v).field();
}

SpectralField gradient(const ScalarField& phi) {
  const auto modes = phi.grid().modes();
  std::array<Coeffs, 3> comps;
  for (int d = 0; d < 3; ++d) {
    comps[d].resize(modes.size());
    for (std::size_t i = 0; i < modes.size(); ++i) comps[d][i] = kI * modes[i].k[d] * phi[i];
  }
  return SpectralField(phi.grid(), std::move(comps));
}

ScalarField divergence(const SpectralField& v) {
  const auto modes = v.grid().modes();
  ScalarField out(v.grid());
  for (std::size_t i = 0; i < modes.size(); ++i) {
    Complex s{};
    for (int d = 0; d < 3; ++d) s += kI * modes[i].k[d] * v.component(d)[i];
    out[i] = s;
  }
  return out;
}

TensorField grad_tensor(const SpectralField& v) {
  const auto modes = v.grid().modes();
  TensorField t(v.grid());
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      auto& c = t(i, j).coeffs();
      const auto& src = v.component(i);
      for (std::size_t m = 0; m < modes.size(); ++m) c[m] = kI * modes[m].k[j] * src[m];
    }
  return t;
}

SpectralField divergence_of_tensor(const TensorField& t) {
  const TorusGrid& grid = t(0, 0).grid();
  const auto modes = grid.modes();
  std::array<Coeffs, 3> comps;
  for (int i = 0; i < 3; ++i) {
    comps[i].assign(modes.size(), Complex{});
    for (int j = 0; j < 3; ++j) {
      const auto& src = t(i, j).coeffs();
      for (std::size_t m = 0; m < modes.size(); ++m) comps[i][m] += kI * modes[m].k[j] * src[m];
    }
  }
  return SpectralField(grid, std::move(comps));
}

SpectralField laplacian(const SpectralField& v) {
  return apply_multiplier(v, [](const ModeInfo& m) { return -m.k2; });
}

ScalarField laplacian(const ScalarField& f) {
  ScalarField out = f;
  const auto modes = f.grid().modes();
  for (std::size_t i = 0; i < modes.size(); ++i) out[i] *= -modes[i].k2;
  return out;
}

SpectralField convolve(const MollifierSpec& phi, const SpectralField& v) {
  if (phi.kind == MollifierKind::none) return v;
  return apply_multiplier(v, [&phi](const ModeInfo& m) { return phi.symbol(m.k2); });
}

SolenoidalField convolve(const MollifierSpec& phi, const SolenoidalField& v) {
  return SolenoidalField::trusted(convolve(phi, v.field()));
}

// -- physical-space products ------------------------------------------------

namespace {
ScalarField transform_and_truncate(const TorusGrid& grid, const PhysicalScalar& samples) {
  ScalarField f = to_spectral(grid, std::span<const double>(samples));
  dealias(f);
  return f;
}
}  // namespace

TensorField outer_product(const SpectralField& u, const SpectralField& w) {
  require_same_grid(u.grid(), w.grid(), "outer_product");
  const auto up = to_physical(u);
  const auto wp = to_physical(w);
  TensorField t(u.grid());
  PhysicalScalar prod(u.grid().physical_size());
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      for (std::size_t x = 0; x < prod.size(); ++x) prod[x] = up[i][x] * wp[j][x];
      t(i, j) = transform_and_truncate(u.grid(), prod);
    }
  return t;
}

TensorField multiply(const PhysicalScalar& a, const TensorField& t) {
  const TorusGrid& grid = t(0, 0).grid();
  if (a.size() != grid.physical_size())
    throw std::invalid_argument("multiply: coefficient samples do not match grid");
  TensorField out(grid);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      PhysicalScalar p = to_physical(t(i, j));
      for (std::size_t x = 0; x < p.size(); ++x) p[x] *= a[x];
      out(i, j) = transform_and_truncate(grid, p);
    }
  return out;
}

PhysicalScalar squared_magnitude(const SpectralField& v) {
  const auto p = to_physical(v);
  PhysicalScalar out(v.grid().physical_size(), 0.0);
  for (int d = 0; d < 3; ++d)
    for (std::size_t x = 0; x < out.size(); ++x) out[x] += p[d][x] * p[d][x];
  return out;
}

}  // namespace nsalpha
