#include "cliquet/levy_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace cliquet {

namespace {

void require_normal(const ModelParams& m, const char* what) {
  if (!m.has_normal_jumps()) {
    throw UnsupportedJumpLaw(std::string(what) + ": requires normally distributed jump sizes");
  }
}

void require_time(double t, const char* what) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw InvalidParam(std::string(what) + ": time must be finite and >= 0");
  }
}

void require_positive_time(double t, const char* what) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw InvalidParam(std::string(what) + ": time must be finite and > 0");
  }
}

// Probabilities may leave [0, 1] by at most the truncated series mass.
double clamp_probability(double v, const SeriesPolicy& p, const char* what) {
  const double slack = 10.0 * p.series_eps + 1e-14;
  if (v < -slack || v > 1.0 + slack) {
    throw InternalInvariantViolation(std::string(what) + ": probability " + std::to_string(v) +
                                     " outside [0, 1] beyond truncation error");
  }
  return std::clamp(v, 0.0, 1.0);
}

}  // namespace

JumpSpec JumpSpec::normal(double mu, double delta) {
  JumpSpec j{JumpLaw::Normal, mu, delta, 1.0};
  j.validate();
  return j;
}

JumpSpec JumpSpec::exponential(double alpha) {
  JumpSpec j{JumpLaw::Exponential, 0.0, 0.0, alpha};
  j.validate();
  return j;
}

void JumpSpec::validate() const {
  if (kind == JumpLaw::Normal) {
    if (!std::isfinite(mu)) throw InvalidParam("jump.mu must be finite");
    if (!(delta >= 0.0) || !std::isfinite(delta)) throw InvalidParam("jump.delta must be >= 0");
  } else {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw InvalidParam("jump.alpha must be > 0");
  }
}

ModelParams ModelParams::with_drift(double r, double sigma, double lambda, const JumpSpec& jumps,
                                    double eta) {
  if (!std::isfinite(r)) throw InvalidParam("r must be finite");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw InvalidParam("sigma must be > 0");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw InvalidParam("lambda must be >= 0");
  if (!std::isfinite(eta)) throw InvalidParam("eta must be finite");
  jumps.validate();
  ModelParams m;
  m.r_ = r;
  m.sigma_ = sigma;
  m.lambda_ = lambda;
  m.jumps_ = jumps;
  m.eta_ = eta;
  m.gamma_ = eta - 0.5 * sigma * sigma;
  return m;
}

void SeriesPolicy::validate() const {
  if (!(series_eps > 0.0 && series_eps < 1.0)) throw InvalidParam("series_eps must lie in (0, 1)");
  if (!(quad_tol > 0.0)) throw InvalidParam("quad_tol must be > 0");
  if (max_terms < 1) throw InvalidParam("max_terms must be >= 1");
}

ModelParams risk_neutral_drift(double r, double sigma, double lambda, const JumpSpec& jumps) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw InvalidParam("sigma must be > 0");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw InvalidParam("lambda must be >= 0");
  jumps.validate();
  double jump_compensator = 0.0;  // E[e^Y] - 1
  if (jumps.kind == JumpLaw::Normal) {
    jump_compensator = std::expm1(jumps.mu + 0.5 * jumps.delta * jumps.delta);
  } else {
    if (!(jumps.alpha > 1.0)) {
      throw DivergentExponentialMoment("exponential jumps need alpha > 1 for E[e^Y] to exist");
    }
    jump_compensator = 1.0 / (jumps.alpha - 1.0);
  }
  return ModelParams::with_drift(r, sigma, lambda, jumps, r - lambda * jump_compensator);
}

Complex characteristic_exponent(Complex u, const ModelParams& m) {
  const Complex i{0.0, 1.0};
  const double s2 = m.sigma() * m.sigma();
  Complex psi = i * u * m.gamma() - 0.5 * s2 * u * u;
  if (m.lambda() > 0.0) {
    const JumpSpec& j = m.jumps();
    if (j.kind == JumpLaw::Normal) {
      psi += m.lambda() * (std::exp(i * u * j.mu - 0.5 * j.delta * j.delta * u * u) - 1.0);
    } else {
      psi += m.lambda() * (i * u / (j.alpha - i * u));
    }
  }
  return psi;
}

Complex characteristic_exponent(double u, const ModelParams& m) {
  return characteristic_exponent(Complex{u, 0.0}, m);
}

Complex char_function(double u, double t, const ModelParams& m) {
  require_time(t, "char_function");
  if (t == 0.0) return {1.0, 0.0};
  return std::exp(t * characteristic_exponent(u, m));
}

Complex char_function_complex_closed(double a, double y, double tau, const ModelParams& m) {
  require_time(tau, "char_function_complex");
  // E[e^{-(a+iy)X}] = φ(ia - y) since i(ia - y) = -(a + iy).
  return std::exp(tau * characteristic_exponent(Complex{-y, a}, m));
}

Complex char_function_complex_series(double a, double y, double tau, const ModelParams& m,
                                     const SeriesPolicy& p) {
  require_normal(m, "char_function_complex");
  require_time(tau, "char_function_complex");
  const Complex z{a, y};
  const double s2t = m.sigma() * m.sigma() * tau;
  const double mu = m.jumps().mu;
  const double d2 = m.jumps().delta * m.jumps().delta;
  // Each extra jump multiplies the term by e^{z(zδ²/2 - μ)}; its modulus sets
  // the effective Poisson rate that controls truncation.
  const Complex per_jump = std::exp(z * (0.5 * d2 * z - mu));
  const double rate = m.lambda() * tau;
  const auto n_terms =
      poisson_weights(rate * std::max(1.0, std::abs(per_jump)), p.series_eps, p.max_terms).size();
  const Complex base = std::exp(z * (0.5 * s2t * z - m.gamma() * tau));
  Complex sum{0.0, 0.0};
  Complex term = std::exp(-rate) * base;
  for (std::size_t k = 0; k < n_terms; ++k) {
    if (k > 0) term *= per_jump * (rate / static_cast<double>(k));
    sum += term;
  }
  return sum;
}

Complex char_function_complex(double a, double y, double tau, const ModelParams& m,
                              const SeriesPolicy& p) {
  require_normal(m, "char_function_complex");
  if (!(a > 0.0)) throw InvalidParam("char_function_complex: damping a must be > 0");
  const Complex closed = char_function_complex_closed(a, y, tau, m);
  const Complex series = char_function_complex_series(a, y, tau, m, p);
  const double scale = std::max(std::abs(closed), 1e-300);
  if (std::abs(series - closed) > 1e-10 * scale) {
    throw InternalInvariantViolation("char_function_complex: series and closed forms disagree");
  }
  return closed;
}

std::vector<MixtureTerm> poisson_mixture(double t, const ModelParams& m, const SeriesPolicy& p) {
  require_normal(m, "poisson_mixture");
  require_time(t, "poisson_mixture");
  const auto w = poisson_weights(m.lambda() * t, p.series_eps, p.max_terms);
  const double s2t = m.sigma() * m.sigma() * t;
  const double d2 = m.jumps().delta * m.jumps().delta;
  std::vector<MixtureTerm> terms;
  terms.reserve(w.size());
  for (std::size_t k = 0; k < w.size(); ++k) {
    MixtureTerm term;
    term.jumps = static_cast<int>(k);
    term.weight = w[k];
    term.mean = m.gamma() * t + static_cast<double>(k) * m.jumps().mu;
    term.variance = s2t + static_cast<double>(k) * d2;
    term.sd = std::sqrt(term.variance);
    terms.push_back(term);
  }
  return terms;
}

double density(double x, double t, const ModelParams& m, const SeriesPolicy& p) {
  require_normal(m, "density");
  require_positive_time(t, "density");
  double f = 0.0;
  for (const auto& c : poisson_mixture(t, m, p)) {
    f += c.weight * normal_pdf((x - c.mean) / c.sd) / c.sd;
  }
  return f;
}

InversionResult density_fourier(double x, double t, const ModelParams& m, const SeriesPolicy& p) {
  require_positive_time(t, "density_fourier");
  // Beyond |u| = U the diffusion factor e^{-tσ²u²/2} is below e^{-80}, and
  // every jump factor has modulus <= 1.
  const double s2t = m.sigma() * m.sigma() * t;
  const double cutoff = std::sqrt(160.0 / s2t);
  auto integrand = [&](double u) {
    return std::exp(Complex{0.0, -u * x} + t * characteristic_exponent(u, m));
  };
  QuadOptions qo;
  qo.tol = 2.0 * kPi * p.quad_tol;
  qo.max_panels = 50000;
  const double drift = std::abs(x) + std::abs(m.gamma() * t) + 1.0;
  qo.max_panel_width = 2.0 * kPi / drift;
  const auto res = integrate_finite(integrand, -cutoff, cutoff, qo);
  InversionResult out;
  out.value = res.value.real() / (2.0 * kPi);
  out.imag_residual = res.value.imag() / (2.0 * kPi);
  out.abs_error_estimate = res.abs_error_estimate / (2.0 * kPi);
  if (std::abs(out.imag_residual) > std::max(p.quad_tol, 4.0 * out.abs_error_estimate)) {
    throw QuadratureFailure("density_fourier: imaginary residual " +
                            std::to_string(out.imag_residual) + " exceeds tolerance");
  }
  return out;
}

double cdf(double a, double t, const ModelParams& m, const SeriesPolicy& p) {
  require_normal(m, "cdf");
  require_positive_time(t, "cdf");
  if (std::isnan(a)) throw InvalidParam("cdf: argument is NaN");
  double v = 0.0;
  for (const auto& c : poisson_mixture(t, m, p)) v += c.weight * normal_cdf((a - c.mean) / c.sd);
  return clamp_probability(v, p, "cdf");
}

double return_cdf(double xi, double tau, const ModelParams& m, const SeriesPolicy& p) {
  if (!(xi > -1.0)) throw InvalidParam("return_cdf: xi must be > -1");
  return cdf(std::log1p(xi), tau, m, p);
}

double drawdown_prob(double kappa, double horizon, const ModelParams& m, const SeriesPolicy& p) {
  if (!(kappa > 0.0)) throw InvalidParam("drawdown_prob: kappa must be > 0");
  return cdf(std::log(kappa), horizon, m, p);
}

Moments mean_variance(double t, const ModelParams& m) {
  require_normal(m, "mean_variance");
  require_time(t, "mean_variance");
  const auto& j = m.jumps();
  return {t * (m.gamma() + m.lambda() * j.mu),
          t * (m.sigma() * m.sigma() + m.lambda() * (j.delta * j.delta + j.mu * j.mu))};
}

}  // namespace cliquet
