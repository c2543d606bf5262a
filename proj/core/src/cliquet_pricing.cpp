#include "cliquet/cliquet_pricing.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "period_law.hpp"
#include "pricing_internal.hpp"

namespace cliquet {

using detail::PeriodLaw;

ContractTerms ContractTerms::equidistant(double K, double T, double g, double c, int n, double t0) {
  ContractTerms t;
  t.K = K;
  t.T = T;
  t.g = g;
  t.c = c;
  t.n = n;
  t.t0 = t0;
  t.tau = n >= 1 ? (T - t0) / n : 0.0;
  t.validate();
  return t;
}

void ContractTerms::validate() const {
  auto bad = [](const char* field, const char* rule) {
    throw InvalidContract(std::string("contract.") + field + " " + rule);
  };
  if (!(K > 0.0) || !std::isfinite(K)) bad("K", "must be > 0");
  if (!(T > 0.0) || !std::isfinite(T)) bad("T", "must be > 0");
  if (!std::isfinite(g)) bad("g", "must be finite");
  if (!(c >= 0.0) || !std::isfinite(c)) bad("c", "must be >= 0");
  if (n < 1) bad("n", "must be >= 1");
  if (!(t0 > 0.0) || !std::isfinite(t0)) bad("t0", "must be > 0");
  if (!(tau > 0.0) || !std::isfinite(tau)) bad("tau", "must be > 0");
  if (t0 + n * tau > T * (1.0 + 1e-12)) bad("tau", "must satisfy t0 + n*tau <= T");
}

std::string to_string(PricingMethod m) {
  return m == PricingMethod::Fourier ? "fourier" : "distribution";
}

namespace detail {

Complex ipow(Complex a, int n) {
  Complex r{1.0, 0.0};
  while (n > 0) {
    if (n & 1) r *= a;
    a *= a;
    n >>= 1;
  }
  return r;
}

double imag_residual(const std::function<Complex(double)>& phi) {
  double worst = 0.0;
  for (double x : {0.5, 5.0, 50.0}) {
    worst = std::max(worst, std::abs(phi(-x) - std::conj(phi(x))));
  }
  return worst;
}

void check_bounds(double J, const ContractTerms& terms, const SeriesPolicy& p, const char* who) {
  const double slack = 10.0 * p.quad_tol;
  const double cap = std::max(0.0, terms.rho());
  if (!(J >= -slack) || !(J <= cap + slack)) {
    throw InternalInvariantViolation(std::string(who) + ": normalised option value " +
                                     std::to_string(J) + " outside [0, " + std::to_string(cap) +
                                     "]");
  }
}

Series to_series(const Expansion& e) {
  Series s(e.a.size() + 1);
  s[0] = e.p;
  Complex factor{1.0, 0.0};
  for (std::size_t j = 0; j < e.a.size(); ++j) {
    factor *= Complex{0.0, -1.0};  // (ix)^{-j} = (-i)^j x^{-j}
    s[j + 1] = e.a[j] * factor;
  }
  return s;
}

Series multiply(const Series& a, const Series& b) {
  Series out(kExpansionOrder + 1, Complex{0.0, 0.0});
  for (std::size_t i = 0; i < a.size() && i <= kExpansionOrder; ++i) {
    for (std::size_t j = 0; j < b.size() && i + j <= kExpansionOrder; ++j) {
      out[i + j] += a[i] * b[j];
    }
  }
  return out;
}

Series power(const Series& a, int n) {
  Series r{Complex{1.0, 0.0}};
  Series base = a;
  while (n > 0) {
    if (n & 1) r = multiply(r, base);
    n >>= 1;
    if (n > 0) base = multiply(base, base);
  }
  return r;
}

Complex evaluate(const Series& s, double x) {
  Complex v{0.0, 0.0};
  for (auto it = s.rbegin(); it != s.rend(); ++it) v = v / x + *it;
  return v;
}

Cutoff choose_cutoff(const std::function<double(double)>& defect, int n, double rho,
                     const SeriesPolicy& p) {
  Cutoff c;
  for (double X = 128.0;; X *= 2.0) {
    c.x = X;
    c.bound = n * defect(X) * (2.0 / X + std::abs(rho));
    if (c.bound <= 0.1 * p.quad_tol || X >= 8192.0) return c;
  }
}

double fourier_tail(const Series& h, double rho, double X) {
  double v = 0.0;
  for (std::size_t k = 0; k < h.size(); ++k) {
    const int q = static_cast<int>(k) + 2;
    const double plain = std::pow(X, 1 - q) / (q - 1);
    Complex term = plain - power_fourier_tail(q, rho, X);
    if (k >= 1) term += Complex{0.0, rho} * std::pow(X, -static_cast<double>(k)) / static_cast<double>(k);
    v += (h[k] * term).real();
  }
  return v;
}

}  // namespace detail

namespace {

using detail::ipow;

void require_inputs(const ContractTerms& terms, const ModelParams& m, const SeriesPolicy& p) {
  terms.validate();
  p.validate();
  if (!m.has_normal_jumps()) {
    throw UnsupportedJumpLaw("cliquet pricing requires normally distributed jump sizes");
  }
}

}  // namespace

double ez_closed(const ContractTerms& terms, const ModelParams& m, const SeriesPolicy& p) {
  require_inputs(terms, m, p);
  const double b = std::log1p(terms.c);
  double put = 0.0;  // E[(1 + c - e^{X_τ})^+]
  for (const auto& t : poisson_mixture(terms.tau, m, p)) {
    const double k2 = (b - t.mean) / t.sd;
    const double k1 = k2 - t.sd;
    put += t.weight * ((1.0 + terms.c) * normal_cdf(k2) -
                       std::exp(t.mean + 0.5 * t.variance) * normal_cdf(k1));
  }
  return terms.c - terms.g / terms.n - put;
}

double ez_distribution(const ContractTerms& terms, const ModelParams& m, const SeriesPolicy& p) {
  require_inputs(terms, m, p);
  const PeriodLaw law(terms.tau, terms.c, m, p);
  const double top = 1.0 + terms.c;
  std::vector<double> br{1e-12, top};
  for (const auto& t : law.mixture()) {
    const double centre = std::exp(t.mean);
    if (centre > br.front() && centre < top) br.push_back(centre);
  }
  std::sort(br.begin(), br.end());
  QuadOptions qo;
  qo.tol = p.quad_tol;
  const auto put = integrate_breakpoints([&](double w) { return law.G(w); }, br, qo);
  return terms.c - terms.g / terms.n - put.value;
}

double ez_fourier(const ContractTerms& terms, const ModelParams& m, const SeriesPolicy& p,
                  double a) {
  require_inputs(terms, m, p);
  if (!(a > 0.0) || !std::isfinite(a)) throw InvalidParam("ez_fourier: damping a must be > 0");
  const double log_strike = std::log1p(terms.c);
  auto integrand = [&](double y) {
    const Complex z{a, y};
    const Complex kernel = std::exp((1.0 + z) * log_strike) / (z * (1.0 + z));
    return (kernel * char_function_complex(a, y, terms.tau, m, p)).real();
  };
  // Beyond the cutoff the diffusion factor of |E[e^{-zX}]| is below e^{-80}.
  const double s2t = m.sigma() * m.sigma() * terms.tau;
  const double cutoff = std::sqrt(2.0 * (80.0 + 0.5 * a * a * s2t) / s2t);
  QuadOptions qo;
  qo.tol = kPi * p.quad_tol;
  qo.max_panel_width = 2.0;
  qo.max_panels = 50000;
  const auto res = integrate_finite(integrand, 0.0, cutoff, qo);
  return terms.c - terms.g / terms.n - res.value / kPi;
}

Complex phi_z1_distribution(double x, const ContractTerms& terms, const ModelParams& m,
                            const SeriesPolicy& p) {
  require_inputs(terms, m, p);
  const PeriodLaw law(terms.tau, terms.c, m, p);
  const double s = terms.c - terms.g / terms.n;
  return Complex{std::cos(x * s), std::sin(x * s)} * (1.0 - law.one_minus_F_distribution(x));
}

Complex phi_z1_density(double x, const ContractTerms& terms, const ModelParams& m,
                       const SeriesPolicy& p) {
  require_inputs(terms, m, p);
  const PeriodLaw law(terms.tau, terms.c, m, p);
  const double s = terms.c - terms.g / terms.n;
  return Complex{std::cos(x * s), std::sin(x * s)} * (1.0 - law.one_minus_F_density(x));
}

Complex payoff_transform_numerator(double theta) {
  const double s = std::sin(0.5 * theta);
  double odd;  // θ - sin θ
  if (std::abs(theta) < 0.25) {
    const double t2 = theta * theta;
    odd = theta * t2 *
          (1.0 / 6.0 -
           t2 * (1.0 / 120.0 -
                 t2 * (1.0 / 5040.0 -
                       t2 * (1.0 / 362880.0 -
                             t2 * (1.0 / 39916800.0 - t2 / 6227020800.0)))));
  } else {
    odd = theta - std::sin(theta);
  }
  return {2.0 * s * s, odd};
}

PriceResult price_distribution(const ContractTerms& terms, const ModelParams& m,
                               const SeriesPolicy& p) {
  require_inputs(terms, m, p);
  const PeriodLaw law(terms.tau, terms.c, m, p);
  const int n = terms.n;
  const double rho = terms.rho();
  const double discount = terms.K * std::exp(-m.r() * terms.T);

  PriceResult out;
  out.method = PricingMethod::DistributionFn;
  out.ez1 = ez_closed(terms, m, p);

  const double s = terms.c - terms.g / n;
  out.imag_residual = detail::imag_residual([&](double x) {
    return Complex{std::cos(x * s), std::sin(x * s)} * (1.0 - law.one_minus_F_distribution(x));
  });

  // Re(1 - φ_{Z₁}(x)^n) with φ_{Z₁}^n = e^{ixϱ} F^n, split so that nothing
  // cancels as x → 0.
  auto one_minus_phi_n = [&](double x) {
    const Complex e{std::cos(x * rho), std::sin(x * rho)};
    return detail::one_minus_exp_i(x * rho) +
           e * detail::one_minus_power(law.one_minus_F_distribution(x), n);
  };
  const auto expansion = law.F_expansion(detail::kExpansionOrder);
  const auto h = detail::power(detail::to_series(expansion), n);
  const auto cut = detail::choose_cutoff(
      [&](double X) { return std::abs(1.0 - law.one_minus_F_distribution(X) - expansion(X)); }, n,
      rho, p);

  SemiInfiniteOptions so;
  so.tol = p.quad_tol;
  so.cutoff = cut.x;
  if (rho != 0.0) so.max_panel_width = kPi / std::abs(rho);
  so.tail = [&](double X) {
    // ∫_X^∞ (1 - Re e^{iϱx} Σ h_k x^{-k})/x^2 dx
    double v = 1.0 / X;
    for (std::size_t k = 0; k < h.size(); ++k) {
      v -= (h[k] * power_fourier_tail(static_cast<int>(k) + 2, rho, X)).real();
    }
    return TailEstimate{v, cut.bound};
  };
  const auto integral = integrate_semi_infinite(
      [&](double x) { return one_minus_phi_n(x).real() / (x * x); }, so);

  const double J = 0.5 * n * out.ez1 + integral.value / kPi;
  detail::check_bounds(J, terms, p, "price_distribution");
  out.price = discount * (1.0 + terms.g + J);
  out.tail_bound = discount * integral.tail_bound / kPi;
  out.abs_error_estimate = discount * integral.abs_error_estimate / kPi;
  out.cutoff = cut.x;
  out.panels_used = integral.panels_used;
  return out;
}

PriceResult price_fourier(const ContractTerms& terms, const ModelParams& m, const SeriesPolicy& p) {
  require_inputs(terms, m, p);
  const PeriodLaw law(terms.tau, terms.c, m, p);
  const int n = terms.n;
  const double rho = terms.rho();
  const double discount = terms.K * std::exp(-m.r() * terms.T);

  PriceResult out;
  out.method = PricingMethod::Fourier;
  out.ez1 = ez_closed(terms, m, p);

  const double s = terms.c - terms.g / n;
  out.imag_residual = detail::imag_residual([&](double x) {
    return Complex{std::cos(x * s), std::sin(x * s)} * (1.0 - law.one_minus_F_density(x));
  });

  const double atom_n = std::pow(law.atom(), n);
  double J = 0.5 * atom_n * rho;
  if (rho != 0.0) {
    auto H = [&](double y) { return ipow(1.0 - law.one_minus_F_density(y), n); };
    const auto expansion = law.F_expansion(detail::kExpansionOrder);
    const auto h = detail::power(detail::to_series(expansion), n);
    const auto cut = detail::choose_cutoff(
        [&](double X) { return std::abs(1.0 - law.one_minus_F_density(X) - expansion(X)); }, n,
        rho, p);

    SemiInfiniteOptions so;
    so.tol = p.quad_tol;
    so.cutoff = cut.x;
    so.max_panel_width = kPi / std::abs(rho);
    so.tail = [&](double Y) { return TailEstimate{detail::fourier_tail(h, rho, Y), cut.bound}; };
    const auto integral = integrate_semi_infinite(
        [&](double y) { return (payoff_transform_numerator(y * rho) / (y * y) * H(y)).real(); },
        so);
    J += integral.value / kPi;
    out.tail_bound = discount * integral.tail_bound / kPi;
    out.abs_error_estimate = discount * integral.abs_error_estimate / kPi;
    out.cutoff = cut.x;
    out.panels_used = integral.panels_used;
  }
  detail::check_bounds(J, terms, p, "price_fourier");
  out.price = discount * (1.0 + terms.g + J);
  return out;
}

PriceResult price(PricingMethod method, const ContractTerms& terms, const ModelParams& m,
                  const SeriesPolicy& p) {
  return method == PricingMethod::Fourier ? price_fourier(terms, m, p)
                                          : price_distribution(terms, m, p);
}

}  // namespace cliquet
