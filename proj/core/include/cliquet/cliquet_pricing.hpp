#pragma once

// Globally floored, locally capped cliquet paying
//   H_T = K (1 + g + max{0, Σ_k Z_k}),  Z_k = min{c, R_k} - g/n,
// priced through the distribution-function route and the Fourier route.

#include <string>

#include "cliquet/levy_model.hpp"

namespace cliquet {

struct ContractTerms {
  double K = 1.0;    // notional
  double T = 1.0;    // maturity, years
  double g = 0.0;    // guaranteed rate
  double c = 0.0;    // local cap
  int n = 1;         // reset periods
  double t0 = 0.0;   // start of the first period
  double tau = 1.0;  // period length

  /// Resets t0, t0 + tau, ..., t0 + n tau = T.
  static ContractTerms equidistant(double K, double T, double g, double c, int n, double t0);

  /// ϱ = nc - g, the largest attainable value of Σ Z_k.
  double rho() const { return n * c - g; }

  /// Throws InvalidContract naming the offending field.
  void validate() const;
};

enum class PricingMethod { DistributionFn, Fourier };

std::string to_string(PricingMethod m);

struct PriceResult {
  double price = 0.0;
  PricingMethod method = PricingMethod::DistributionFn;
  double ez1 = 0.0;
  /// Conjugate-symmetry defect max |φ_{Z₁}(-x) - conj φ_{Z₁}(x)| at probe points.
  double imag_residual = 0.0;
  /// Estimated error of the asymptotic tail beyond the numerical cutoff.
  double tail_bound = 0.0;
  double abs_error_estimate = 0.0;
  double cutoff = 0.0;
  int panels_used = 0;
};

/// E[Z₁] by integrating the distribution function of e^{X_τ}.
double ez_distribution(const ContractTerms& terms, const ModelParams& m, const SeriesPolicy& p);

/// E[Z₁] in closed form from the Poisson mixture and Φ.
double ez_closed(const ContractTerms& terms, const ModelParams& m, const SeriesPolicy& p);

/// E[Z₁] from the damped Fourier transform of the put payoff, damping a > 0.
double ez_fourier(const ContractTerms& terms, const ModelParams& m, const SeriesPolicy& p,
                  double a = 1.0);

/// φ_{Z₁}(x) from the distribution function of e^{X_τ}.
Complex phi_z1_distribution(double x, const ContractTerms& terms, const ModelParams& m,
                            const SeriesPolicy& p);

/// φ_{Z₁}(x) from the density of X_τ.
Complex phi_z1_density(double x, const ContractTerms& terms, const ModelParams& m,
                       const SeriesPolicy& p);

/// Price from E[Z₁] and the characteristic function of Σ Z_k.
PriceResult price_distribution(const ContractTerms& terms, const ModelParams& m,
                               const SeriesPolicy& p);

/// Price from the Fourier transform of the payoff max{0, ϱ - D}.
PriceResult price_fourier(const ContractTerms& terms, const ModelParams& m, const SeriesPolicy& p);

PriceResult price(PricingMethod method, const ContractTerms& terms, const ModelParams& m,
                  const SeriesPolicy& p);

/// 1 + iθ - e^{iθ}, accurate for small θ.
Complex payoff_transform_numerator(double theta);

}  // namespace cliquet
