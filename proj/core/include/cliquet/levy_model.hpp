#pragma once

// Jump-diffusion Lévy process X_t = γt + σW_t + Σ_{j≤N_t} Y_j with Poisson
// jump times of intensity λ and i.i.d. jump sizes Y_j, and the laws derived
// from it: characteristic function, density, distribution function, the law
// of the period return R = e^{X_τ} - 1 and drawdown probabilities.

#include <vector>

#include "cliquet/numerics.hpp"

namespace cliquet {

enum class JumpLaw { Normal, Exponential };

/// Law of a single jump size. The intensity lives in ModelParams.
struct JumpSpec {
  JumpLaw kind = JumpLaw::Normal;
  double mu = 0.0;     // mean jump size (log-return units), Normal only
  double delta = 0.0;  // jump-size standard deviation, Normal only; 0 = point mass at mu
  double alpha = 1.0;  // rate, Exponential only

  static JumpSpec normal(double mu, double delta);
  static JumpSpec exponential(double alpha);

  /// Throws InvalidParam when delta < 0 or alpha <= 0.
  void validate() const;
};

/// Immutable Lévy triplet inputs. gamma() == eta() - sigma()^2 / 2 always holds.
class ModelParams {
 public:
  /// Builds a model with an explicitly chosen drift η. Used for sensitivity
  /// bumps that hold the drift fixed; prefer risk_neutral_drift otherwise.
  static ModelParams with_drift(double r, double sigma, double lambda, const JumpSpec& jumps,
                                double eta);

  double r() const { return r_; }
  double sigma() const { return sigma_; }
  double lambda() const { return lambda_; }
  const JumpSpec& jumps() const { return jumps_; }
  double eta() const { return eta_; }
  double gamma() const { return gamma_; }

  bool has_normal_jumps() const { return jumps_.kind == JumpLaw::Normal; }

 private:
  ModelParams() = default;

  double r_ = 0.0;
  double sigma_ = 0.0;
  double lambda_ = 0.0;
  JumpSpec jumps_{};
  double eta_ = 0.0;
  double gamma_ = 0.0;
};

/// Truncation and tolerance policy for Poisson series and quadratures.
struct SeriesPolicy {
  double series_eps = 1e-12;
  double quad_tol = 1e-9;
  int max_terms = 200;

  void validate() const;
};

/// Model whose drift satisfies the no-arbitrage restriction
/// η = r - λ(E[e^Y] - 1), so that e^{-rt} S_t is a martingale.
ModelParams risk_neutral_drift(double r, double sigma, double lambda, const JumpSpec& jumps);

/// ψ(u) with E[e^{iuX_t}] = e^{tψ(u)}.
Complex characteristic_exponent(double u, const ModelParams& m);

/// ψ evaluated at a complex argument, where the exponential moment exists.
Complex characteristic_exponent(Complex u, const ModelParams& m);

/// E[e^{iuX_t}].
Complex char_function(double u, double t, const ModelParams& m);

/// E[e^{-(a+iy)X_τ}] from the exponential (closed) form.
Complex char_function_complex_closed(double a, double y, double tau, const ModelParams& m);

/// E[e^{-(a+iy)X_τ}] as the Poisson series of Gaussian exponential moments.
Complex char_function_complex_series(double a, double y, double tau, const ModelParams& m,
                                     const SeriesPolicy& p);

/// E[e^{-(a+iy)X_τ}] for a > 0. Both representations are evaluated; the closed
/// form is returned after checking that the two agree to 1e-10 relative.
Complex char_function_complex(double a, double y, double tau, const ModelParams& m,
                              const SeriesPolicy& p = {});

/// One Gaussian component of the law of X_t conditioned on m jumps.
struct MixtureTerm {
  int jumps = 0;
  double weight = 0.0;  // Poisson probability of `jumps`
  double mean = 0.0;    // γt + mμ
  double variance = 0.0;  // σ²t + mδ²
  double sd = 0.0;
};

/// Poisson-weighted normal mixture representing X_t, truncated per policy.
std::vector<MixtureTerm> poisson_mixture(double t, const ModelParams& m, const SeriesPolicy& p);

/// Density of X_t from the truncated Poisson mixture. Normal jumps only.
double density(double x, double t, const ModelParams& m, const SeriesPolicy& p = {});

struct InversionResult {
  double value = 0.0;
  double imag_residual = 0.0;
  double abs_error_estimate = 0.0;
};

/// Density of X_t by numerical Fourier inversion of the characteristic
/// function. Works for both jump laws.
InversionResult density_fourier(double x, double t, const ModelParams& m,
                                const SeriesPolicy& p = {});

/// Q(X_t <= a). Normal jumps only.
double cdf(double a, double t, const ModelParams& m, const SeriesPolicy& p = {});

/// Q(R <= xi) for the period return R = e^{X_τ} - 1, xi > -1.
double return_cdf(double xi, double tau, const ModelParams& m, const SeriesPolicy& p = {});

/// Q(S_{t+h} <= kappa S_t) = Q(X_h <= ln kappa).
double drawdown_prob(double kappa, double horizon, const ModelParams& m,
                     const SeriesPolicy& p = {});

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
};

/// Mean and variance of X_t. Normal jumps only.
Moments mean_variance(double t, const ModelParams& m);

}  // namespace cliquet
