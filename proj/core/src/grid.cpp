#include "nsalpha/grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace nsalpha {

namespace {
// Plan creation and destruction in FFTW are not thread safe; execution is.
std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

struct TorusGrid::Impl {
  double length;
  int n;
  double dealias_fraction;
  int cutoff;
  std::vector<ModeInfo> modes;
  double max_k2 = 0.0;
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;

  Impl(double l, int n_, double frac) : length(l), n(n_), dealias_fraction(frac) {
    cutoff = static_cast<int>(std::floor(frac * n / 2.0 + 1e-12));
    const int nh = n / 2 + 1;
    const double unit = 2.0 * std::numbers::pi / length;
    modes.resize(static_cast<std::size_t>(n) * n * nh);
    for (int i1 = 0; i1 < n; ++i1) {
      for (int i2 = 0; i2 < n; ++i2) {
        for (int i3 = 0; i3 < nh; ++i3) {
          ModeInfo& m = modes[(static_cast<std::size_t>(i1) * n + i2) * nh + i3];
          m.z[0] = i1 <= n / 2 ? i1 : i1 - n;
          m.z[1] = i2 <= n / 2 ? i2 : i2 - n;
          m.z[2] = i3;
          m.k2 = 0.0;
          for (int d = 0; d < 3; ++d) {
            m.k[d] = unit * m.z[d];
            m.k2 += m.k[d] * m.k[d];
          }
          m.retained = std::abs(m.z[0]) <= cutoff && std::abs(m.z[1]) <= cutoff &&
                       std::abs(m.z[2]) <= cutoff && std::abs(m.z[0]) < n / 2 &&
                       std::abs(m.z[1]) < n / 2 && m.z[2] < n / 2;
          m.weight = (i3 == 0 || i3 == n / 2) ? 1.0 : 2.0;
          if (m.retained) max_k2 = std::max(max_k2, m.k2);
        }
      }
    }

    std::vector<double> real(static_cast<std::size_t>(n) * n * n);
    std::vector<Complex> cplx(modes.size());
    std::lock_guard lock(fftw_planner_mutex());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    r2c = fftw_plan_dft_r2c_3d(n, n, n, real.data(),
                               reinterpret_cast<fftw_complex*>(cplx.data()), flags);
    c2r = fftw_plan_dft_c2r_3d(n, n, n, reinterpret_cast<fftw_complex*>(cplx.data()),
                               real.data(), flags);
    if (r2c == nullptr || c2r == nullptr) throw std::runtime_error("FFTW planning failed");
  }

  ~Impl() {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(r2c);
    fftw_destroy_plan(c2r);
  }

  Impl(const Impl&) = delete;
  Impl& operator=(const Impl&) = delete;
};

TorusGrid::TorusGrid(double length, int n, double dealias_fraction) {
  if (!(length > 0.0) || !std::isfinite(length))
    throw std::invalid_argument("TorusGrid: period length must be positive");
  if (n < 4 || n % 2 != 0)
    throw std::invalid_argument("TorusGrid: N must be even and at least 4, got " +
                                std::to_string(n));
  if (!(dealias_fraction > 0.0 && dealias_fraction <= 1.0))
    throw std::invalid_argument("TorusGrid: dealias_fraction must lie in (0, 1]");
  impl_ = std::make_shared<const Impl>(length, n, dealias_fraction);
}

double TorusGrid::length() const { return impl_->length; }
int TorusGrid::n() const { return impl_->n; }
double TorusGrid::dealias_fraction() const { return impl_->dealias_fraction; }
int TorusGrid::cutoff() const { return impl_->cutoff; }
double TorusGrid::wavenumber_unit() const { return 2.0 * std::numbers::pi / impl_->length; }
double TorusGrid::volume() const { return std::pow(impl_->length, 3); }

std::size_t TorusGrid::spectral_size() const { return impl_->modes.size(); }
std::size_t TorusGrid::physical_size() const {
  const auto n = static_cast<std::size_t>(impl_->n);
  return n * n * n;
}

std::span<const ModeInfo> TorusGrid::modes() const { return impl_->modes; }

std::size_t TorusGrid::conjugate_index(std::size_t index) const {
  const int n = impl_->n;
  const std::size_t nh = static_cast<std::size_t>(n / 2 + 1);
  const std::size_t i3 = index % nh;
  const std::size_t rest = index / nh;
  const std::size_t i2 = rest % n;
  const std::size_t i1 = rest / n;
  const std::size_t j1 = (n - i1) % n;
  const std::size_t j2 = (n - i2) % n;
  return (j1 * n + j2) * nh + i3;
}

double TorusGrid::max_retained_k2() const { return impl_->max_k2; }

void TorusGrid::forward(std::span<const double> physical, std::span<Complex> spectral) const {
  if (physical.size() != physical_size() || spectral.size() != spectral_size())
    throw std::invalid_argument("TorusGrid::forward: buffer size mismatch");
  // r2c leaves its input intact
  fftw_execute_dft_r2c(impl_->r2c, const_cast<double*>(physical.data()),
                       reinterpret_cast<fftw_complex*>(spectral.data()));
}

void TorusGrid::inverse(std::span<const Complex> spectral, std::span<double> physical) const {
  if (physical.size() != physical_size() || spectral.size() != spectral_size())
    throw std::invalid_argument("TorusGrid::inverse: buffer size mismatch");
  // c2r overwrites its input
  std::vector<Complex> scratch(spectral.begin(), spectral.end());
  fftw_execute_dft_c2r(impl_->c2r, reinterpret_cast<fftw_complex*>(scratch.data()),
                       physical.data());
}

bool TorusGrid::operator==(const TorusGrid& other) const {
  if (impl_ == other.impl_) return true;
  return impl_->n == other.impl_->n && impl_->length == other.impl_->length &&
         impl_->dealias_fraction == other.impl_->dealias_fraction;
}

void require_same_grid(const TorusGrid& a, const TorusGrid& b, const char* context) {
  if (a != b) throw std::invalid_argument(std::string(context) + ": fields live on different grids");
}

}  // namespace nsalpha
