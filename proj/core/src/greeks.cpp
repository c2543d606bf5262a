#include "cliquet/greeks.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "period_law.hpp"
#include "pricing_internal.hpp"

namespace cliquet {

using detail::PeriodLaw;
using detail::SigmaSensitivity;

namespace {

SigmaSensitivity sensitivity(VegaConvention c) {
  return c == VegaConvention::DriftFixed ? SigmaSensitivity::DriftFixed
                                         : SigmaSensitivity::GammaFrozen;
}

void require_inputs(const ContractTerms& terms, const ModelParams& m, const SeriesPolicy& p) {
  terms.validate();
  p.validate();
  if (!m.has_normal_jumps()) {
    throw UnsupportedJumpLaw("Vega requires normally distributed jump sizes");
  }
}

// Q(D' < b) for D' = Σ_{k<n} (c - R_k)^+ by Gil-Pelaez inversion of
// F^{n-1}; the atom of D' at zero is split off and inverted exactly.
class ShortfallCdf {
 public:
  ShortfallCdf(const PeriodLaw& law, int n, const SeriesPolicy& p) : n_(n) {
    atom_ = std::pow(law.atom(), n - 1);
    if (n == 1) return;
    const auto expansion = law.F_expansion(detail::kExpansionOrder);
    tail_ = detail::power(detail::to_series(expansion), n - 1);
    tail_[0] = 0.0;
    const auto cut = detail::choose_cutoff(
        [&](double X) {
          return std::abs(1.0 - law.one_minus_F_distribution(X) - expansion(X));
        },
        n - 1, 1.0, p);
    cutoff_ = cut.x;
    using GL = boost::math::quadrature::gauss<double, 20>;
    const auto& nodes = GL::abscissa();
    const auto& weights = GL::weights();
    const int panels = static_cast<int>(cutoff_ / kPanel);
    for (int k = 0; k < panels; ++k) {
      const double centre = (k + 0.5) * kPanel;
      const double half = 0.5 * kPanel;
      for (std::size_t j = 0; j < nodes.size(); ++j) {
        for (double sgn : {-1.0, 1.0}) {
          if (j == 0 && sgn > 0.0 && nodes[0] == 0.0) continue;
          const double x = centre + sgn * half * nodes[j];
          x_.push_back(x);
          w_.push_back(half * weights[j] / x);
          h_.push_back(H(law, x));
        }
      }
    }
  }

  double operator()(double b) const {
    const double sgn = b > 0.0 ? 1.0 : (b < 0.0 ? -1.0 : 0.0);
    double v = 0.5 + 0.5 * atom_ * sgn;
    if (n_ == 1) return v;
    double s = 0.0;
    for (std::size_t j = 0; j < x_.size(); ++j) {
      const double th = x_[j] * b;
      s += w_[j] * (std::cos(th) * h_[j].imag() + std::sin(th) * h_[j].real());
    }
    for (std::size_t k = 1; k < tail_.size(); ++k) {
      s += (tail_[k] * power_fourier_tail(static_cast<int>(k) + 1, b, cutoff_)).imag();
    }
    return v + s / kPi;
  }

 private:
  Complex H(const PeriodLaw& law, double x) const {
    return detail::ipow(1.0 - law.one_minus_F_distribution(x), n_ - 1) - atom_;
  }

  static constexpr double kPanel = 2.0;

  int n_;
  double atom_ = 1.0;
  double cutoff_ = 0.0;
  detail::Series tail_;
  std::vector<double> x_;
  std::vector<double> w_;
  std::vector<Complex> h_;
};

}  // namespace

std::string to_string(VegaConvention c) {
  return c == VegaConvention::DriftFixed ? "drift_fixed" : "gamma_frozen";
}

std::string to_string(GreeksMethod m) {
  switch (m) {
    case GreeksMethod::Fourier: return "fourier";
    case GreeksMethod::DistributionFn: return "distribution";
    case GreeksMethod::FiniteDifference: return "finite_difference";
  }
  return "unknown";
}

std::string to_string(BumpTarget t) {
  switch (t) {
    case BumpTarget::RateDriftFrozen: return "r_drift_frozen";
    case BumpTarget::RateRiskNeutral: return "r_risk_neutral";
    case BumpTarget::SigmaDriftFixed: return "sigma_drift_fixed";
    case BumpTarget::SigmaGammaFrozen: return "sigma_gamma_frozen";
    case BumpTarget::Lambda: return "lambda";
    case BumpTarget::JumpMean: return "jump_mu";
    case BumpTarget::JumpStd: return "jump_delta";
  }
  return "unknown";
}

double rho_from_price(double price, double T) { return -T * price; }

double rho(const ContractTerms& terms, const ModelParams& m, const SeriesPolicy& p) {
  return rho_from_price(price_fourier(terms, m, p).price, terms.T);
}

DeltaGamma delta_gamma(const ContractTerms& terms) {
  if (!(terms.t0 > 0.0)) {
    throw InvalidContract("contract.t0 must be > 0 for spot to cancel from the returns");
  }
  return {0.0, 0.0};
}

double vega_fourier(const ContractTerms& terms, const ModelParams& m, const SeriesPolicy& p,
                    VegaConvention conv) {
  require_inputs(terms, m, p);
  const double rho = terms.rho();
  if (rho == 0.0) return 0.0;
  const PeriodLaw law(terms.tau, terms.c, m, p);
  const auto sens = sensitivity(conv);
  const int n = terms.n;

  auto H = [&](double y) {
    const auto v = law.F_and_sigma_derivative(y, sens);
    return detail::ipow(1.0 - v[0], n - 1) * v[1];
  };
  const double dp = law.atom_sigma_derivative(sens);
  const double atom_pow = std::pow(law.atom(), n - 1);
  const auto expansion = law.F_expansion(detail::kExpansionOrder);
  const auto d_expansion = law.F_sigma_expansion(sens, detail::kExpansionOrder);
  const auto h = detail::multiply(detail::power(detail::to_series(expansion), n - 1),
                                  detail::to_series(d_expansion));
  const auto cut = detail::choose_cutoff(
      [&](double X) {
        const auto v = law.F_and_sigma_derivative(X, sens);
        const double dF = std::abs(1.0 - v[0] - expansion(X));
        return dF * std::max(1.0, std::abs(v[1])) + std::abs(v[1] - d_expansion(X));
      },
      n, rho, p);

  SemiInfiniteOptions so;
  so.tol = p.quad_tol;
  so.cutoff = cut.x;
  so.max_panel_width = kPi / std::abs(rho);
  so.tail = [&](double Y) { return TailEstimate{detail::fourier_tail(h, rho, Y), cut.bound}; };
  const auto integral = integrate_semi_infinite(
      [&](double y) { return (payoff_transform_numerator(y * rho) / (y * y) * H(y)).real(); },
      so);
  const double vj = n * integral.value / kPi + 0.5 * n * atom_pow * dp * rho;
  return terms.K * std::exp(-m.r() * terms.T) * vj;
}

double vega_distribution(const ContractTerms& terms, const ModelParams& m, const SeriesPolicy& p,
                         VegaConvention conv) {
  require_inputs(terms, m, p);
  const PeriodLaw law(terms.tau, terms.c, m, p);
  const auto sens = sensitivity(conv);
  const int n = terms.n;
  const double top = 1.0 + terms.c;
  const double rho = terms.rho();
  const ShortfallCdf below(law, n, p);

  auto integrand = [&](double w) {
    return -n * below(w - top + rho) * law.G_sigma_derivative(w, sens);
  };
  std::vector<double> br{1e-12, top};
  const double jump_at = top - rho;  // Q(D' < b) jumps where b = 0
  if (jump_at > br.front() && jump_at < top) br.push_back(jump_at);
  for (const auto& t : law.mixture()) {
    const double centre = std::exp(t.mean);
    if (t.weight > 1e-6 && centre > br.front() && centre < top) br.push_back(centre);
  }
  std::sort(br.begin(), br.end());
  br.erase(std::unique(br.begin(), br.end()), br.end());
  QuadOptions qo;
  qo.tol = 1e-7;
  const auto res = integrate_breakpoints(integrand, br, qo);
  return terms.K * std::exp(-m.r() * terms.T) * res.value;
}

ModelParams bump(const ModelParams& m, BumpTarget target, double h) {
  const JumpSpec& j = m.jumps();
  switch (target) {
    case BumpTarget::RateDriftFrozen:
      return ModelParams::with_drift(m.r() + h, m.sigma(), m.lambda(), j, m.eta());
    case BumpTarget::RateRiskNeutral:
      return risk_neutral_drift(m.r() + h, m.sigma(), m.lambda(), j);
    case BumpTarget::SigmaDriftFixed:
      return ModelParams::with_drift(m.r(), m.sigma() + h, m.lambda(), j, m.eta());
    case BumpTarget::SigmaGammaFrozen: {
      const double s = m.sigma() + h;
      return ModelParams::with_drift(m.r(), s, m.lambda(), j, m.gamma() + 0.5 * s * s);
    }
    case BumpTarget::Lambda:
      return risk_neutral_drift(m.r(), m.sigma(), m.lambda() + h, j);
    case BumpTarget::JumpMean:
      if (j.kind != JumpLaw::Normal) throw UnsupportedJumpLaw("jump_mu bump needs normal jumps");
      return risk_neutral_drift(m.r(), m.sigma(), m.lambda(), JumpSpec::normal(j.mu + h, j.delta));
    case BumpTarget::JumpStd:
      if (j.kind != JumpLaw::Normal) throw UnsupportedJumpLaw("jump_delta bump needs normal jumps");
      return risk_neutral_drift(m.r(), m.sigma(), m.lambda(), JumpSpec::normal(j.mu, j.delta + h));
  }
  throw InvalidParam("bump: unknown target");
}

double central_difference(const std::function<double(double)>& f, double x, double h) {
  if (!(h > 0.0)) throw InvalidParam("central_difference: h must be > 0");
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

double fd_greek(BumpTarget target, const ContractTerms& terms, const ModelParams& m,
                const SeriesPolicy& p, double h, PricingMethod method) {
  if (!(h > 0.0)) throw InvalidParam("fd_greek: h must be > 0");
  return central_difference(
      [&](double s) { return price(method, terms, bump(m, target, s), p).price; }, 0.0, h);
}

GreeksReport greeks(const ContractTerms& terms, const ModelParams& m, const SeriesPolicy& p,
                    GreeksMethod method, VegaConvention conv, double fd_h) {
  GreeksReport r;
  r.method = method;
  r.convention = conv;
  const auto dg = delta_gamma(terms);
  r.delta = dg.delta;
  r.gamma = dg.gamma;
  switch (method) {
    case GreeksMethod::Fourier:
      r.price = price_fourier(terms, m, p).price;
      r.rho = rho_from_price(r.price, terms.T);
      r.vega = vega_fourier(terms, m, p, conv);
      break;
    case GreeksMethod::DistributionFn:
      r.price = price_distribution(terms, m, p).price;
      r.rho = rho_from_price(r.price, terms.T);
      r.vega = vega_distribution(terms, m, p, conv);
      break;
    case GreeksMethod::FiniteDifference: {
      r.price = price_fourier(terms, m, p).price;
      r.rho = fd_greek(BumpTarget::RateDriftFrozen, terms, m, p, fd_h);
      const auto target = conv == VegaConvention::DriftFixed ? BumpTarget::SigmaDriftFixed
                                                             : BumpTarget::SigmaGammaFrozen;
      r.vega = fd_greek(target, terms, m, p, fd_h);
      break;
    }
  }
  return r;
}

}  // namespace cliquet
