#include "cliquet/numerics.hpp"

#include <boost/math/special_functions/erf.hpp>
#include <gsl/gsl_sf_expint.h>

#include <cmath>
#include <numbers>

namespace cliquet {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_pdf(double x) {
  constexpr double inv_sqrt_2pi = 0.398942280401432677939946059934381868;
  return inv_sqrt_2pi * std::exp(-0.5 * x * x);
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw InvalidParam("normal_quantile: p must lie in (0, 1)");
  return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p);
}

std::vector<double> poisson_weights(double rate, double eps, int max_terms) {
  if (!(rate >= 0.0) || !std::isfinite(rate)) {
    throw InvalidParam("poisson_weights: rate must be finite and >= 0");
  }
  if (!(eps > 0.0 && eps < 1.0)) throw InvalidParam("poisson_weights: eps must lie in (0, 1)");
  if (max_terms < 1) throw InvalidParam("poisson_weights: max_terms must be >= 1");

  std::vector<double> w;
  if (rate == 0.0) {
    w.push_back(1.0);
    return w;
  }
  // e^{-rate} underflows for large rates, so weights come from lgamma there.
  const bool log_space = rate > 500.0;
  const double log_rate = std::log(rate);
  double cumulative = 0.0;
  double weight = std::exp(-rate);
  for (int m = 0;; ++m) {
    if (m >= max_terms) {
      throw TruncationBudgetExceeded("poisson_weights: rate " + std::to_string(rate) +
                                     " needs more than " + std::to_string(max_terms) +
                                     " terms for eps " + std::to_string(eps));
    }
    if (log_space) {
      weight = std::exp(-rate + m * log_rate - std::lgamma(m + 1.0));
    } else if (m > 0) {
      weight *= rate / m;
    }
    w.push_back(weight);
    cumulative += weight;
    // Past the mode the remaining mass is below the geometric bound
    // w_m * rate / (m + 1 - rate).
    if (cumulative >= 1.0 - eps) break;
    if (m + 1 > rate && weight * rate / (m + 1.0 - rate) < 1e-3 * eps &&
        cumulative >= 1.0 - eps - 1e-15) {
      break;
    }
  }
  return w;
}

Complex inverse_square_fourier_tail(double omega, double x) {
  if (!(x > 0.0)) throw InvalidParam("inverse_square_fourier_tail: x must be positive");
  if (omega == 0.0) return {1.0 / x, 0.0};
  const double w = std::abs(omega);
  const double z = w * x;
  // ∫_z^∞ e^{is}/s^2 ds = e^{iz}/z - i Ci(z) - (π/2 - Si(z))
  const double ci = gsl_sf_Ci(z);
  const double si = gsl_sf_Si(z);
  const Complex eiz{std::cos(z), std::sin(z)};
  Complex v = w * (eiz / z + Complex{-(kPi / 2.0 - si), -ci});
  return omega > 0.0 ? v : std::conj(v);
}

Complex exponential_integral_en(int k, Complex z) {
  if (k < 1) throw InvalidParam("exponential_integral_en: k must be >= 1");
  if (z == Complex{0.0, 0.0}) {
    if (k == 1) throw InvalidParam("exponential_integral_en: E_1 diverges at 0");
    return {1.0 / (k - 1), 0.0};
  }
  constexpr double eps = 1e-16;
  constexpr int max_iter = 10000;
  constexpr double euler = 0.577215664901532860606512090082402431;
  if (std::abs(z) > 2.0) {
    // Continued fraction, modified Lentz.
    const Complex tiny{1e-300, 0.0};
    Complex b = z + static_cast<double>(k);
    Complex c = 1.0 / tiny;
    Complex d = 1.0 / b;
    Complex h = d;
    for (int i = 1; i <= max_iter; ++i) {
      const double an = -static_cast<double>(i) * (k - 1 + i);
      b += 2.0;
      d = 1.0 / (an * d + b);
      c = b + an / c;
      const Complex del = c * d;
      h *= del;
      if (std::abs(del - 1.0) < eps) return h * std::exp(-z);
    }
    throw TruncationBudgetExceeded("exponential_integral_en: continued fraction did not converge");
  }
  // Power series.
  Complex ans = (k - 1 != 0) ? Complex{1.0 / (k - 1), 0.0} : -std::log(z) - euler;
  Complex fact{1.0, 0.0};
  for (int i = 1; i <= max_iter; ++i) {
    fact *= -z / static_cast<double>(i);
    Complex del;
    if (i != k - 1) {
      del = -fact / static_cast<double>(i - k + 1);
    } else {
      double psi = -euler;
      for (int j = 1; j <= k - 1; ++j) psi += 1.0 / j;
      del = fact * (-std::log(z) + psi);
    }
    ans += del;
    if (std::abs(del) < std::abs(ans) * eps) return ans;
  }
  throw TruncationBudgetExceeded("exponential_integral_en: series did not converge");
}

Complex power_fourier_tail(int k, double omega, double x) {
  if (k < 2) throw InvalidParam("power_fourier_tail: k must be >= 2");
  if (!(x > 0.0)) throw InvalidParam("power_fourier_tail: x must be positive");
  return std::pow(x, 1 - k) * exponential_integral_en(k, Complex{0.0, -omega * x});
}

QuadResult<double> integrate_semi_infinite(const std::function<double(double)>& f,
                                           const SemiInfiniteOptions& opt) {
  if (!(opt.tol > 0.0)) throw InvalidParam("integrate_semi_infinite: tolerance must be positive");
  if (!(opt.head > 0.0)) throw InvalidParam("integrate_semi_infinite: head must be positive");
  if (!(opt.tail_constant >= 0.0)) {
    throw InvalidParam("integrate_semi_infinite: tail constant must be >= 0");
  }

  double cutoff = opt.cutoff;
  if (cutoff <= 0.0) cutoff = std::max(1.0, 2.0 * opt.tail_constant / opt.tol);
  if (!(cutoff > opt.head) || !std::isfinite(cutoff) || cutoff > 1e12) {
    throw QuadratureFailure("integrate_semi_infinite: unusable cutoff " + std::to_string(cutoff));
  }

  // Geometric breakpoints keep the first panels close to the origin where the
  // integrand carries most of its mass.
  std::vector<double> breaks{opt.head};
  for (double x = 1.0; x < cutoff; x *= 2.0) {
    if (x > breaks.back()) breaks.push_back(x);
  }
  breaks.push_back(cutoff);

  QuadOptions qo;
  qo.tol = 0.5 * opt.tol;
  qo.max_panels = opt.max_panels;
  qo.max_panel_width = opt.max_panel_width;
  auto body = integrate_breakpoints(f, breaks, qo);

  const double head = opt.head * f(opt.head);

  TailEstimate tail;
  if (opt.tail) {
    tail = opt.tail(cutoff);
  } else {
    tail.bound = opt.tail_constant / cutoff;
  }

  QuadResult<double> out;
  out.value = body.value + head + tail.value;
  out.abs_error_estimate = body.abs_error_estimate;
  out.panels_used = body.panels_used;
  out.tail_bound = tail.bound;
  return out;
}

}  // namespace cliquet
