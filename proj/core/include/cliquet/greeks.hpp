#pragma once

// Price sensitivities of the cliquet: Rho, Delta, Gamma and Vega in the
// Fourier and distribution-function representations, plus the finite
// difference oracle used to validate them.

#include <functional>
#include <string>

#include "cliquet/cliquet_pricing.hpp"

namespace cliquet {

/// Which model quantity is held fixed when σ moves.
/// GammaFrozen: the Lévy drift γ stays put (the analytic Vega formulas).
/// DriftFixed: η stays put and γ = η - σ²/2 follows σ.
enum class VegaConvention { GammaFrozen, DriftFixed };

enum class GreeksMethod { Fourier, DistributionFn, FiniteDifference };

std::string to_string(VegaConvention c);
std::string to_string(GreeksMethod m);

struct GreeksReport {
  double price = 0.0;
  double rho = 0.0;
  double delta = 0.0;
  double gamma = 0.0;
  double vega = 0.0;
  GreeksMethod method = GreeksMethod::Fourier;
  VegaConvention convention = VegaConvention::GammaFrozen;
};

/// ∂C₀/∂r through the discount factor: -T C₀ with C₀ = price_fourier.
double rho(const ContractTerms& terms, const ModelParams& m, const SeriesPolicy& p);

/// -T · price.
double rho_from_price(double price, double T);

struct DeltaGamma {
  double delta = 0.0;
  double gamma = 0.0;
};

/// Spot enters only through ratios once t0 > 0, so both vanish.
/// Throws InvalidContract when t0 <= 0.
DeltaGamma delta_gamma(const ContractTerms& terms);

/// Vega from the Fourier representation of the price.
double vega_fourier(const ContractTerms& terms, const ModelParams& m, const SeriesPolicy& p,
                    VegaConvention conv = VegaConvention::GammaFrozen);

/// Vega from the distribution-function representation: a w-integral of the
/// σ-derivative of Q(e^{X_τ} <= w) against Q(Σ_{k<n} Z_k > 1 + g/n - w).
double vega_distribution(const ContractTerms& terms, const ModelParams& m, const SeriesPolicy& p,
                         VegaConvention conv = VegaConvention::GammaFrozen);

/// Parameter moved by a finite-difference bump, with its freeze rule.
enum class BumpTarget {
  RateDriftFrozen,   // r moves, η fixed
  RateRiskNeutral,   // r moves, η re-derived from the drift restriction
  SigmaDriftFixed,   // σ moves, η fixed
  SigmaGammaFrozen,  // σ moves, γ fixed
  Lambda,            // λ moves, η re-derived
  JumpMean,          // μ moves, η re-derived
  JumpStd,           // δ moves, η re-derived
};

std::string to_string(BumpTarget t);

/// Model with the target parameter shifted by h under its freeze rule.
ModelParams bump(const ModelParams& m, BumpTarget target, double h);

/// (f(x + h) - f(x - h)) / 2h.
double central_difference(const std::function<double(double)>& f, double x, double h);

/// Central difference of the price in the target parameter.
double fd_greek(BumpTarget target, const ContractTerms& terms, const ModelParams& m,
                const SeriesPolicy& p, double h,
                PricingMethod method = PricingMethod::Fourier);

GreeksReport greeks(const ContractTerms& terms, const ModelParams& m, const SeriesPolicy& p,
                    GreeksMethod method = GreeksMethod::Fourier,
                    VegaConvention conv = VegaConvention::GammaFrozen, double fd_h = 1e-4);

}  // namespace cliquet
