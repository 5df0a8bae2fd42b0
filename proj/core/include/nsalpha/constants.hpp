#pragma once

#include <string>
#include <vector>

namespace nsalpha {

/// Arguments of the explicit constant chain.
struct ModelParams {
  double alpha = 1.0;
  double beta = 0.5;
  double nu = 1.0;
  double L = 1.0;
  double phi_l2 = 1.0;     // ||phi||_{L^2}
  double phi_h1 = 1.0;     // ||phi||_{H^1}
  double c_a = 1.0;        // Lipschitz constant of A (also ||grad A||_inf)
  double c_a_prime = 1.0;  // Lipschitz constant of grad A
  double f_hminus1 = 1.0;  // ||f||_{H^-1 homogeneous}
  double f_l2 = 1.0;       // ||f||_{L^2}, for the Grashof number
  double kappa0 = 1.0;     // energy input frequency
  double u0_l2 = 1.0;
  double T = 1.0;

  /// Throws std::domain_error naming every offending field.
  void validate() const;
};

/// Attractor-dimension bound in both exact-chain and envelope form.
/// Every quantity is carried as a natural logarithm as well; the linear
/// value is +inf when it exceeds double range.
struct DimensionBound {
  double m = 0.0;
  double log_m = 0.0;
  double D = 0.0;
  double log10_D = 0.0;
  double envelope = 0.0;
  double log10_envelope = 0.0;
  double C0 = 0.0;  // c_0 evaluated on the attractor (u0 = R, T = T_eta)
  double C1 = 0.0;  // c_1 evaluated at T = T_eta
};

struct ConstantsReport {
  double K0 = 0, K1 = 0, K2 = 0, K3 = 0, K4 = 0;
  double L1 = 0, L2 = 0, L3 = 0;
  double C0 = 0, C1 = 0;
  double eta = 0, R2 = 0, T_eta = 0;
  double m = 0;
  double K_alpha_beta = 0;
  double D = 0, log10_D = 0;
  double envelope = 0, log10_envelope = 0;
  double Gr = 0, Re = 0, kappa_D = 0;
  /// Generic multiplicative constants of the estimates, all set to 1.
  double generic_constant = 1.0;

  /// Ordered (name, value) pairs; the serialization order.
  std::vector<std::pair<std::string, double>> entries() const;
  /// "name = value" lines, 17 significant digits.
  std::string to_text() const;
  std::string csv_header() const;
  std::string csv_row() const;
};

/// Piecewise K(alpha, beta): 1/(alpha^5 beta^{5/2}) on (0,1],
/// 1/(alpha beta^{5/2}) on (1, 1/sqrt(beta)], alpha^4 beyond.
double k_alpha_beta(double alpha, double beta);

/// 1 / (2 min(alpha^2 beta, 1/2)).
double k0_constant(double alpha, double beta);

ConstantsReport compute_chain(const ModelParams& params);

DimensionBound fractal_dimension_bound(const ModelParams& params);

struct TurbulenceFrequencies {
  double F = 0;      // ||f||_{L^2} / L^{3/2}
  double Gr = 0;     // F L^3 / nu^2
  double Re = 0;     // sqrt(Gr)
  double kappa_D = 0;  // Gr * kappa0
};

TurbulenceFrequencies turbulence_frequencies(double f_l2, double L, double nu, double kappa0);

}  // namespace nsalpha
