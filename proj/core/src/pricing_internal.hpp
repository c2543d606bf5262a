#pragma once

#include <functional>
#include <vector>

#include "cliquet/cliquet_pricing.hpp"
#include "period_law.hpp"

namespace cliquet::detail {

/// Coefficients s_k of an asymptotic series Σ_k s_k x^{-k}.
using Series = std::vector<Complex>;

inline constexpr int kExpansionOrder = 10;

Series to_series(const Expansion& e);
Series multiply(const Series& a, const Series& b);
Series power(const Series& a, int n);
Complex evaluate(const Series& s, double x);

/// Numerical cutoff beyond which the expansion replaces F, with an estimate
/// of the error that substitution causes in the outer integral.
struct Cutoff {
  double x = 0.0;
  double bound = 0.0;
};

/// Doubles X from 128 until the expansion matches the numerical transform.
/// `defect(X)` returns the largest mismatch between them at X.
Cutoff choose_cutoff(const std::function<double(double)>& defect, int n, double rho,
                     const SeriesPolicy& p);

Complex ipow(Complex a, int n);

double imag_residual(const std::function<Complex(double)>& phi);

void check_bounds(double J, const ContractTerms& terms, const SeriesPolicy& p, const char* who);

/// ∫_X^∞ Re(θ̂(y) H(y)) dy with θ̂(y) = (1 + iyϱ - e^{iyϱ})/y^2 and H given by
/// its series; the constant term must be real.
double fourier_tail(const Series& h, double rho, double X);

}  // namespace cliquet::detail
