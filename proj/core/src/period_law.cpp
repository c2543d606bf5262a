#include "period_law.hpp"

#include <algorithm>
#include <cmath>

namespace cliquet::detail {

PeriodLaw::PeriodLaw(double tau, double c, const ModelParams& m, const SeriesPolicy& p)
    : tau_(tau),
      c_(c),
      log_cap_(std::log1p(c)),
      sigma_(m.sigma()),
      inner_tol_(1e-3 * p.quad_tol),
      terms_(poisson_mixture(tau, m, p)) {
  lower_ = log_cap_;
  atom_ = 0.0;
  for (const auto& t : terms_) {
    lower_ = std::min(lower_, t.mean - 40.0 * t.sd);
    atom_ += t.weight * normal_cdf(-(log_cap_ - t.mean) / t.sd);
  }
}

double PeriodLaw::atom_sigma_derivative(SigmaSensitivity s) const {
  const double st = sigma_ * tau_;
  double d = 0.0;
  for (const auto& t : terms_) {
    const double k2 = (log_cap_ - t.mean) / t.sd;
    double dk = -k2 * st / t.variance;
    if (s == SigmaSensitivity::DriftFixed) dk += st / t.sd;
    d -= t.weight * normal_pdf(k2) * dk;
  }
  return d;
}

double PeriodLaw::G(double w) const {
  if (w <= 0.0) return 0.0;
  const double lw = std::log(w);
  double v = 0.0;
  for (const auto& t : terms_) v += t.weight * normal_cdf((lw - t.mean) / t.sd);
  return v;
}

double PeriodLaw::G_sigma_derivative(double w, SigmaSensitivity s) const {
  if (w <= 0.0) return 0.0;
  const double lw = std::log(w);
  const double st = sigma_ * tau_;
  double d = 0.0;
  for (const auto& t : terms_) {
    const double k = (lw - t.mean) / t.sd;
    double dk = -k * st / t.variance;
    if (s == SigmaSensitivity::DriftFixed) dk += st / t.sd;
    d += t.weight * normal_pdf(k) * dk;
  }
  return d;
}

double PeriodLaw::f(double u) const {
  double v = 0.0;
  for (const auto& t : terms_) v += t.weight * normal_pdf((u - t.mean) / t.sd) / t.sd;
  return v;
}

double PeriodLaw::inner_tolerance(double x) const { return inner_tol_ * std::max(std::abs(x), 1e-300); }

std::vector<double> PeriodLaw::phase_breaks(double x) const {
  // The phase x(1 + c - e^u) advances by 2π between consecutive points.
  std::vector<double> br{lower_, log_cap_};
  const double ax = std::abs(x);
  const double floor_w = std::exp(lower_);
  const double step = 2.0 * kPi / ax;
  for (int k = 1;; ++k) {
    const double w = (1.0 + c_) - k * step;
    if (!(w > floor_w)) break;
    br.push_back(std::log(w));
  }
  for (const auto& t : terms_) {
    if (t.weight > 1e-6 && t.mean > lower_ && t.mean < log_cap_) br.push_back(t.mean);
  }
  std::sort(br.begin(), br.end());
  br.erase(std::unique(br.begin(), br.end(),
                       [](double a, double b) { return std::abs(a - b) < 1e-12; }),
           br.end());
  return br;
}

Complex PeriodLaw::one_minus_F_density(double x) const {
  if (x == 0.0) return {0.0, 0.0};
  const double cap1 = 1.0 + c_;
  auto integrand = [&](double u) { return one_minus_exp_neg_i(x * (cap1 - std::exp(u))) * f(u); };
  const auto br = phase_breaks(x);
  QuadOptions qo;
  qo.tol = inner_tolerance(x);
  qo.max_panels = std::max(20000, 8 * static_cast<int>(br.size()));
  return integrate_breakpoints(integrand, br, qo).value;
}

Complex PeriodLaw::one_minus_F_distribution(double x) const {
  if (x == 0.0) return {0.0, 0.0};
  const double cap1 = 1.0 + c_;
  // 1 - F(x) = ix ∫_0^{1+c} e^{-ix(1+c-w)} G(w) dw; G vanishes at 0+.
  auto integrand = [&](double w) {
    const double th = -x * (cap1 - w);
    return Complex{std::cos(th), std::sin(th)} * G(w);
  };
  std::vector<double> br{1e-12, cap1};
  for (const auto& t : terms_) {
    const double centre = std::exp(t.mean);
    if (t.weight > 1e-6 && centre > br.front() && centre < cap1) br.push_back(centre);
  }
  std::sort(br.begin(), br.end());
  QuadOptions qo;
  qo.tol = inner_tolerance(x) / std::abs(x);
  qo.max_panel_width = 2.0 * kPi / std::abs(x);
  qo.max_panels = std::max(20000, 8 * static_cast<int>(cap1 / qo.max_panel_width + br.size()));
  const Complex integral = integrate_breakpoints(integrand, br, qo).value;
  return Complex{0.0, x} * integral;
}

std::array<Complex, 2> PeriodLaw::F_and_sigma_derivative(double x, SigmaSensitivity s) const {
  using Pair = std::array<Complex, 2>;
  if (x == 0.0) return Pair{};
  const double cap1 = 1.0 + c_;
  const double st = sigma_ * tau_;
  const bool drift_fixed = s == SigmaSensitivity::DriftFixed;
  auto integrand = [&](double u) {
    double dens = 0.0;
    double dsig = 0.0;
    for (const auto& t : terms_) {
      const double z = u - t.mean;
      const double n = t.weight * normal_pdf(z / t.sd) / t.sd;
      dens += n;
      double shape = z * z - t.variance;
      if (drift_fixed) shape -= t.variance * z;
      dsig += n * st * shape / (t.variance * t.variance);
    }
    const Complex k = one_minus_exp_neg_i(x * (cap1 - std::exp(u)));
    return Pair{k * dens, -k * dsig};
  };
  const auto br = phase_breaks(x);
  QuadOptions qo;
  qo.tol = inner_tolerance(x);
  qo.max_panels = std::max(20000, 8 * static_cast<int>(br.size()));
  return integrate_breakpoints(integrand, br, qo).value;
}

Complex Expansion::operator()(double x) const {
  const Complex y = 1.0 / Complex{0.0, x};
  Complex v{0.0, 0.0};
  for (auto it = a.rbegin(); it != a.rend(); ++it) v = (v + *it) * y;
  return p + v;
}

std::vector<double> PeriodLaw::cdf_derivatives(int order) const {
  std::vector<double> d(order + 1, 0.0);
  for (const auto& t : terms_) {
    const double z = (log_cap_ - t.mean) / t.sd;
    d[0] += t.weight * normal_cdf(z);
    // f^{(j)} = Σ w φ(z) (-1/sd)^j He_j(z) / sd with probabilists' Hermite He_j.
    const double base = t.weight * normal_pdf(z) / t.sd;
    double scale = 1.0;
    double he_prev = 0.0;
    double he = 1.0;
    for (int j = 0; j < order; ++j) {
      d[j + 1] += base * scale * he;
      scale *= -1.0 / t.sd;
      const double next = z * he - j * he_prev;
      he_prev = he;
      he = next;
    }
  }
  return d;
}

Expansion PeriodLaw::expansion_from(const std::vector<double>& c, int order) const {
  // G^{(j)}(w) = w^{-j} Σ_i s(j, i) C^{(i)}(ln w) with signed Stirling numbers
  // of the first kind.
  Expansion e;
  e.a.resize(order);
  std::vector<double> stirling{0.0, 1.0};  // s(1, i)
  const double w = 1.0 + c_;
  double wpow = w;
  for (int j = 1; j <= order; ++j) {
    if (j > 1) {
      std::vector<double> next(j + 1, 0.0);
      for (int i = 1; i <= j; ++i) {
        next[i] = stirling[i - 1] - (j - 1) * (i < j ? stirling[i] : 0.0);
      }
      stirling = std::move(next);
      wpow *= w;
    }
    double g = 0.0;
    for (int i = 1; i <= j; ++i) g += stirling[i] * c[i];
    e.a[j - 1] = (j % 2 == 1 ? 1.0 : -1.0) * g / wpow;
  }
  e.p = -c[0];
  return e;
}

Expansion PeriodLaw::F_expansion(int order) const {
  auto c = cdf_derivatives(order);
  Expansion e = expansion_from(c, order);
  e.p = atom_;
  return e;
}

Expansion PeriodLaw::F_sigma_expansion(SigmaSensitivity s, int order) const {
  // ∂C/∂v = C''/2 and ∂C/∂mean = -C', with dv/dσ = 2στ and dmean/dσ = -στ.
  const auto c = cdf_derivatives(order + 2);
  const double st = sigma_ * tau_;
  std::vector<double> cs(order + 1);
  for (int i = 0; i <= order; ++i) {
    cs[i] = st * c[i + 2];
    if (s == SigmaSensitivity::DriftFixed) cs[i] += st * c[i + 1];
  }
  return expansion_from(cs, order);
}

}  // namespace cliquet::detail
