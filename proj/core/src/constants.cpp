#include "nsalpha/constants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "nsalpha/csv.hpp"

namespace nsalpha {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// log(1 + e^x) without overflow.
double softplus(double x) {
  if (x == -kInf) return 0.0;
  if (x > 0.0) return x + std::log1p(std::exp(-x));
  return std::log1p(std::exp(x));
}

double exp_or_inf(double log_value) {
  return log_value > 709.0 ? kInf : std::exp(log_value);
}

struct Chain {
  double K0, K1, K2, K3, L1, L2, L3, eta, R2, T_eta, K4;
};

Chain filter_chain(const ModelParams& p) {
  Chain c{};
  const double a2 = p.alpha * p.alpha;
  c.K0 = k0_constant(p.alpha, p.beta);
  c.L1 = a2 * p.c_a * p.phi_l2;
  c.L2 = a2 * p.c_a * p.phi_h1;
  c.L3 = a2 * p.phi_h1 * std::max(p.c_a_prime * p.phi_h1, p.c_a);
  const double k0_32 = std::pow(c.K0, 1.5);
  c.K1 = std::max(k0_32 * c.L1, c.K0);
  c.K2 = std::max(k0_32 * c.L2, c.K0);
  c.K3 = std::max({c.K0 * c.K1 * c.L2, c.K0 * c.K2 * c.L1, k0_32 * c.L3});
  c.eta = 4.0 * std::numbers::pi * std::numbers::pi * p.nu / (p.L * p.L);
  c.R2 = p.L * p.L * p.f_hminus1 * p.f_hminus1 /
         (2.0 * std::numbers::pi * std::numbers::pi * p.nu * p.nu);
  c.T_eta = 4.0 / (c.eta * c.eta) * (1.0 + std::sqrt(1.0 + c.eta * c.eta));
  const double R = std::sqrt(c.R2);
  c.K4 = c.K3 * std::pow(2.0 * R + 1.0, 4) * c.R2 / p.nu;
  return c;
}

// c_0 = K3 / sqrt(nu) * (sum_{i=1,2} ||u0_i||^2 + ||f_i||^2_{L^2_t H^-1} / nu + 1)^{3/2}
// with both trajectories sharing data norm u0 and steady forcing over [0, T].
double c0_constant(const Chain& c, const ModelParams& p, double u0, double T) {
  const double per = u0 * u0 + T * p.f_hminus1 * p.f_hminus1 / p.nu;
  return c.K3 / std::sqrt(p.nu) * std::pow(2.0 * per + 1.0, 1.5);
}

double c1_constant(const Chain& c, const ModelParams& p, double T) {
  const double R = std::sqrt(c.R2);
  return c.K3 / std::sqrt(p.nu) * (3.0 * c.R2 + 1.0) *
         (R + std::sqrt(T / p.nu) * p.f_hminus1);
}

}  // namespace

void ModelParams::validate() const {
  std::vector<std::string> bad;
  auto positive = [&](const char* name, double v) {
    if (!(v > 0.0) || std::isnan(v)) bad.emplace_back(name);
  };
  auto nonnegative = [&](const char* name, double v) {
    if (!(v >= 0.0)) bad.emplace_back(name);
  };
  positive("alpha", alpha);
  if (!(beta > 0.0 && beta < 1.0)) bad.emplace_back("beta (must lie in (0,1))");
  positive("nu", nu);
  positive("L", L);
  positive("phi_l2", phi_l2);
  positive("phi_h1", phi_h1);
  nonnegative("c_a", c_a);
  nonnegative("c_a_prime", c_a_prime);
  positive("f_hminus1", f_hminus1);
  positive("f_l2", f_l2);
  positive("kappa0", kappa0);
  positive("u0_l2", u0_l2);
  positive("T", T);
  if (!bad.empty()) {
    std::string msg = "invalid model parameters:";
    for (const auto& b : bad) msg += " " + b;
    throw std::domain_error(msg);
  }
}

double k_alpha_beta(double alpha, double beta) {
  if (!(alpha > 0.0)) throw std::domain_error("k_alpha_beta: alpha must be positive");
  if (!(beta > 0.0 && beta < 1.0)) throw std::domain_error("k_alpha_beta: beta must lie in (0,1)");
  const double beta52 = beta * beta * std::sqrt(beta);
  if (alpha <= 1.0) return 1.0 / (std::pow(alpha, 5) * beta52);
  if (alpha <= 1.0 / std::sqrt(beta)) return 1.0 / (alpha * beta52);
  return std::pow(alpha, 4);
}

double k0_constant(double alpha, double beta) {
  return 1.0 / (2.0 * std::min(alpha * alpha * beta, 0.5));
}

TurbulenceFrequencies turbulence_frequencies(double f_l2, double L, double nu, double kappa0) {
  if (!(L > 0.0) || !(nu > 0.0) || !(kappa0 > 0.0) || !(f_l2 >= 0.0))
    throw std::domain_error("turbulence_frequencies: L, nu, kappa0 must be positive");
  TurbulenceFrequencies out;
  out.F = f_l2 / std::pow(L, 1.5);
  out.Gr = out.F * L * L * L / (nu * nu);
  out.Re = std::sqrt(out.Gr);
  out.kappa_D = out.Gr * kappa0;
  return out;
}

DimensionBound fractal_dimension_bound(const ModelParams& params) {
  params.validate();
  const Chain c = filter_chain(params);
  DimensionBound out;
  const double R = std::sqrt(c.R2);
  const double sqrt_T = std::sqrt(c.T_eta);
  out.C0 = c0_constant(c, params, R, c.T_eta);
  out.C1 = c1_constant(c, params, c.T_eta);

  // m = floor(4/sqrt(nu) sqrt(K4 (1+T)) e^{(C0/2) sqrt(T)}) + 1
  const double log_arg = std::log(4.0 / std::sqrt(params.nu)) +
                         0.5 * std::log(c.K4 * (1.0 + c.T_eta)) + 0.5 * out.C0 * sqrt_T;
  if (log_arg < 700.0) {
    out.m = std::floor(std::exp(log_arg)) + 1.0;
    out.log_m = std::log(out.m);
  } else {
    out.m = kInf;
    out.log_m = log_arg;  // floor(.) + 1 is invisible at this magnitude
  }

  // ln(1 + X), X = 16 sqrt2 K4 (1 + e^{C1 sqrt T} (1+T)) (1+T)
  const double log_x = std::log(16.0 * std::sqrt(2.0) * c.K4) + std::log1p(c.T_eta) +
                       softplus(out.C1 * sqrt_T + std::log1p(c.T_eta));
  const double log_term = softplus(log_x);
  const double log_d = std::log(256.0 / std::log(4.0)) + 3.0 * out.log_m + std::log(log_term);
  out.D = exp_or_inf(log_d);
  out.log10_D = log_d / std::numbers::ln10;

  // (1 + sqrt(K) F^3 e^{K F^{3/2}})^3 ln(1 + K F^6 e^{K F^3}), F = 1 + ||f||
  const double K = k_alpha_beta(params.alpha, params.beta);
  const double F = 1.0 + params.f_hminus1;
  const double log_t1 = softplus(0.5 * std::log(K) + 3.0 * std::log(F) + K * std::pow(F, 1.5));
  const double log_t2 = softplus(std::log(K) + 6.0 * std::log(F) + K * std::pow(F, 3.0));
  const double log_env = 3.0 * log_t1 + std::log(log_t2);
  out.envelope = exp_or_inf(log_env);
  out.log10_envelope = log_env / std::numbers::ln10;
  return out;
}

ConstantsReport compute_chain(const ModelParams& params) {
  params.validate();
  const Chain c = filter_chain(params);
  ConstantsReport r;
  r.K0 = c.K0;
  r.K1 = c.K1;
  r.K2 = c.K2;
  r.K3 = c.K3;
  r.K4 = c.K4;
  r.L1 = c.L1;
  r.L2 = c.L2;
  r.L3 = c.L3;
  r.eta = c.eta;
  r.R2 = c.R2;
  r.T_eta = c.T_eta;
  r.C0 = c0_constant(c, params, params.u0_l2, params.T);
  r.C1 = c1_constant(c, params, params.T);
  r.K_alpha_beta = k_alpha_beta(params.alpha, params.beta);
  const DimensionBound dim = fractal_dimension_bound(params);
  r.m = dim.m;
  r.D = dim.D;
  r.log10_D = dim.log10_D;
  r.envelope = dim.envelope;
  r.log10_envelope = dim.log10_envelope;
  const auto turb = turbulence_frequencies(params.f_l2, params.L, params.nu, params.kappa0);
  r.Gr = turb.Gr;
  r.Re = turb.Re;
  r.kappa_D = turb.kappa_D;
  return r;
}

std::vector<std::pair<std::string, double>> ConstantsReport::entries() const {
  return {{"K0", K0},
          {"K1", K1},
          {"K2", K2},
          {"K3", K3},
          {"K4", K4},
          {"L1", L1},
          {"L2", L2},
          {"L3", L3},
          {"C0", C0},
          {"C1", C1},
          {"eta", eta},
          {"R2", R2},
          {"T_eta", T_eta},
          {"m", m},
          {"K_alpha_beta", K_alpha_beta},
          {"D", D},
          {"log10_D", log10_D},
          {"envelope", envelope},
          {"log10_envelope", log10_envelope},
          {"Gr", Gr},
          {"Re", Re},
          {"kappa_D", kappa_D},
          {"generic_constant", generic_constant}};
}

std::string ConstantsReport::to_text() const {
  std::ostringstream out;
  for (const auto& [name, value] : entries()) out << name << " = " << format_double(value) << '\n';
  out << "nominal = true\n";
  return out.str();
}

std::string ConstantsReport::csv_header() const {
  std::string out;
  for (const auto& [name, value] : entries()) {
    if (!out.empty()) out += ',';
    out += name;
  }
  return out;
}

std::string ConstantsReport::csv_row() const {
  std::string out;
  for (const auto& [name, value] : entries()) {
    if (!out.empty()) out += ',';
    out += format_double(value);
  }
  return out;
}

}  // namespace nsalpha
