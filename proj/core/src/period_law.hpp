#pragma once

// Law of the capped shortfall D = (c - R)^+ = (1 + c - e^{X_τ})^+ of one reset
// period, shared by the pricing and Greeks routes. F(x) = E[e^{-ixD}] and
// φ_{Z₁}(x) = e^{ix(c - g/n)} F(x).

#include <array>
#include <vector>

#include "cliquet/levy_model.hpp"

namespace cliquet::detail {

enum class SigmaSensitivity { GammaFrozen, DriftFixed };

/// Large-x expansion F(x) ≈ p + Σ_{j>=1} a_j (ix)^{-j}, from the derivatives of
/// w ↦ Q(e^{X_τ} <= w) at w = 1 + c.
struct Expansion {
  double p = 0.0;
  std::vector<double> a;

  Complex operator()(double x) const;
};

class PeriodLaw {
 public:
  PeriodLaw(double tau, double c, const ModelParams& m, const SeriesPolicy& p);

  double cap() const { return c_; }
  double tau() const { return tau_; }
  const std::vector<MixtureTerm>& mixture() const { return terms_; }

  /// Q(R >= c), the mass of the atom of D at zero.
  double atom() const { return atom_; }

  /// ∂/∂σ of atom().
  double atom_sigma_derivative(SigmaSensitivity s) const;

  /// Q(e^{X_τ} <= w).
  double G(double w) const;

  /// ∂/∂σ of G(w).
  double G_sigma_derivative(double w, SigmaSensitivity s) const;

  /// Mixture density of X_τ.
  double f(double u) const;

  /// 1 - F(x) from the density of X_τ.
  Complex one_minus_F_density(double x) const;

  /// 1 - F(x) from the distribution function of e^{X_τ}.
  Complex one_minus_F_distribution(double x) const;

  /// {1 - F(x), ∂F/∂σ(x)} in a single density-route quadrature.
  std::array<Complex, 2> F_and_sigma_derivative(double x, SigmaSensitivity s) const;

  Expansion F_expansion(int order) const;

  /// Expansion of ∂F/∂σ.
  Expansion F_sigma_expansion(SigmaSensitivity s, int order) const;

  /// Lower truncation point of the u-integrals.
  double lower_limit() const { return lower_; }

  /// Absolute tolerance targeted for 1 - F(x).
  double inner_tolerance(double x) const;

 private:
  std::vector<double> phase_breaks(double x) const;
  // d^i/du^i of Q(X_τ <= u) at u = ln(1 + c), i = 0..order.
  std::vector<double> cdf_derivatives(int order) const;
  Expansion expansion_from(const std::vector<double>& cdf_derivs, int order) const;

  double tau_;
  double c_;
  double log_cap_;  // ln(1 + c)
  double sigma_;
  double lower_;
  double inner_tol_;
  double atom_;
  std::vector<MixtureTerm> terms_;
};

/// 1 - e^{-iθ} without cancellation for small θ.
inline Complex one_minus_exp_neg_i(double theta) {
  const double s = std::sin(0.5 * theta);
  return {2.0 * s * s, std::sin(theta)};
}

/// 1 - e^{iθ} without cancellation for small θ.
inline Complex one_minus_exp_i(double theta) { return std::conj(one_minus_exp_neg_i(theta)); }

/// 1 - a^n from 1 - a, accurate when a is close to 1.
inline Complex one_minus_power(const Complex& one_minus_a, int n) {
  const Complex a = 1.0 - one_minus_a;
  Complex sum{0.0, 0.0};
  Complex ak{1.0, 0.0};
  for (int k = 0; k < n; ++k) {
    sum += ak;
    ak *= a;
  }
  return one_minus_a * sum;
}

}  // namespace cliquet::detail
