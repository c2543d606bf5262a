#include "cliquet_cli/validation.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>

#include "cliquet/cliquet_pricing.hpp"
#include "cliquet/greeks.hpp"
#include "cliquet/mc_oracle.hpp"

namespace cliquet::cli {

namespace {

constexpr double kRate = 0.03;
constexpr double kCap = 0.01;
constexpr int kPeriods = 12;
constexpr double kTau = 1.0 / 12.0;
constexpr double kStart = 1.0 / 12.0;
constexpr double kNotional = 1000.0;

constexpr double kSigmas[] = {0.1, 0.2, 0.4};
constexpr double kLambdas[] = {0.0, 0.5, 2.0};
constexpr double kFloors[] = {0.0, 0.02};

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

ModelParams model(double sigma, double lambda) {
  return risk_neutral_drift(kRate, sigma, lambda, JumpSpec::normal(-0.1, 0.15));
}

ContractTerms contract(double g, int n = kPeriods, double c = kCap) {
  return ContractTerms::equidistant(kNotional, kStart + n * kTau, g, c, n, kStart);
}

struct GridPoint {
  double sigma, lambda, g;
};

std::vector<GridPoint> grid() {
  std::vector<GridPoint> pts;
  for (double s : kSigmas)
    for (double l : kLambdas)
      for (double g : kFloors) pts.push_back({s, l, g});
  return pts;
}

std::string where(const GridPoint& p) {
  return fmt("sigma=%g lambda=%g g=%g", p.sigma, p.lambda, p.g);
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

McConfig mc_config(const ValidationOptions& o, std::uint64_t paths) {
  McConfig mc;
  mc.n_paths = paths;
  mc.seed = o.seed;
  mc.antithetic = true;
  mc.threads = o.threads;
  return mc;
}

// Tracks the worst value of a statistic and where it occurred.
struct Worst {
  double value = 0.0;
  std::string at;

  void update(double v, const std::string& label) {
    if (!(v <= value)) {
      value = v;
      at = label;
    }
  }
};

// Black-Scholes call and put on the period return with forward F, strike k,
// total variance v; undiscounted.
double lognormal_call(double F, double k, double v) {
  const double s = std::sqrt(v);
  const double d1 = (std::log(F / k) + 0.5 * v) / s;
  const double d2 = d1 - s;
  auto Phi = [](double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); };
  return F * Phi(d1) - k * Phi(d2);
}

double lognormal_put(double F, double k, double v) { return lognormal_call(F, k, v) - F + k; }

CheckResult price_equivalence(const ValidationOptions& o) {
  Stopwatch sw;
  Worst w;
  for (const auto& p : grid()) {
    const auto t = contract(p.g);
    const auto m = model(p.sigma, p.lambda);
    const double a = price_distribution(t, m, o.policy).price;
    const double b = price_fourier(t, m, o.policy).price;
    w.update(rel(a, b), where(p));
  }
  CheckResult r{1, "cross-method price equivalence", false, w.value, 1e-5, "", sw.seconds()};
  r.pass = r.measured <= r.tolerance && r.seconds < 60.0;
  r.detail = fmt("18 grid points, worst at %s; runtime limit 60 s", w.at.c_str());
  return r;
}

CheckResult mc_bracket(const ValidationOptions& o) {
  Stopwatch sw;
  Worst w;
  for (const auto& p : grid()) {
    const auto t = contract(p.g);
    const auto m = model(p.sigma, p.lambda);
    const double a = price_fourier(t, m, o.policy).price;
    const auto est = mc_price(t, m, mc_config(o, o.price_paths));
    w.update(std::abs(a - est.mean) / est.std_error, where(p));
  }
  CheckResult r{2, "Monte Carlo bracket", false, w.value, 3.0, "", sw.seconds()};
  r.pass = r.measured <= r.tolerance && r.seconds < 300.0;
  r.detail = fmt("max |analytic - mc| / stderr over 18 points at %llu paths, worst at %s; "
                 "runtime limit 300 s",
                 static_cast<unsigned long long>(o.price_paths), w.at.c_str());
  return r;
}

CheckResult degenerate(const ValidationOptions& o) {
  Stopwatch sw;
  Worst w;
  struct Case {
    int n;
    double c, g;
  };
  for (const Case k : {Case{12, 0.01, 0.12}, Case{4, 0.025, 0.1}, Case{1, 0.03, 0.03}}) {
    for (double s : kSigmas) {
      for (double l : kLambdas) {
        const auto t = contract(k.g, k.n, k.c);
        const auto m = model(s, l);
        const double exact = t.K * std::exp(-m.r() * t.T) * (1.0 + t.g);
        const std::string at = fmt("n=%d c=%g g=%g sigma=%g lambda=%g", k.n, k.c, k.g, s, l);
        w.update(rel(price_distribution(t, m, o.policy).price, exact), "distribution " + at);
        w.update(rel(price_fourier(t, m, o.policy).price, exact), "fourier " + at);
      }
    }
  }
  CheckResult r{3, "degenerate exactness (nc = g)", false, w.value, 1e-10, "", sw.seconds()};
  r.pass = r.measured <= r.tolerance;
  r.detail = "worst: " + w.at;
  return r;
}

CheckResult ez_agreement(const ValidationOptions& o) {
  Stopwatch sw;
  Worst pair;
  for (const auto& p : grid()) {
    const auto t = contract(p.g);
    const auto m = model(p.sigma, p.lambda);
    const std::vector<double> v{ez_closed(t, m, o.policy), ez_distribution(t, m, o.policy),
                                ez_fourier(t, m, o.policy, 0.5), ez_fourier(t, m, o.policy, 1.0),
                                ez_fourier(t, m, o.policy, 2.0)};
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = i + 1; j < v.size(); ++j) pair.update(std::abs(v[i] - v[j]), where(p));
  }
  const GridPoint ref{0.2, 0.5, 0.0};
  const auto t = contract(ref.g);
  const auto m = model(ref.sigma, ref.lambda);
  const auto est = mc_ez1(t, m, mc_config(o, o.ez_paths));
  double z = 0.0;
  for (double v : {ez_closed(t, m, o.policy), ez_distribution(t, m, o.policy),
                   ez_fourier(t, m, o.policy, 0.5), ez_fourier(t, m, o.policy, 1.0),
                   ez_fourier(t, m, o.policy, 2.0)}) {
    z = std::max(z, std::abs(v - est.mean) / est.std_error);
  }
  CheckResult r{4, "E[Z1] triple agreement", false, pair.value, 1e-6, "", sw.seconds()};
  r.pass = pair.value <= 1e-6 && z <= 3.0;
  r.detail = fmt("max pairwise |diff| over 18 points (worst at %s); mc z-score %.3f (tol 3) at %s, "
                 "%llu samples",
                 pair.at.c_str(), z, where(ref).c_str(),
                 static_cast<unsigned long long>(o.ez_paths));
  return r;
}

CheckResult cf_duality(const ValidationOptions& o) {
  Stopwatch sw;
  Worst diff;
  double at_zero = 0.0;
  double modulus = 0.0;
  for (const auto& p : grid()) {
    const auto t = contract(p.g);
    const auto m = model(p.sigma, p.lambda);
    for (double x : {0.5, 1.0, 5.0, 20.0, 50.0}) {
      const Complex a = phi_z1_distribution(x, t, m, o.policy);
      const Complex b = phi_z1_density(x, t, m, o.policy);
      diff.update(std::abs(a - b), where(p) + fmt(" x=%g", x));
      modulus = std::max({modulus, std::abs(a), std::abs(b)});
    }
    for (double x : {0.01, 0.1, 2.0, 10.0, 100.0, 500.0}) {
      modulus = std::max({modulus, std::abs(phi_z1_distribution(x, t, m, o.policy)),
                          std::abs(phi_z1_density(x, t, m, o.policy))});
    }
    at_zero = std::max({at_zero, std::abs(phi_z1_distribution(0.0, t, m, o.policy) - 1.0),
                        std::abs(phi_z1_density(0.0, t, m, o.policy) - 1.0)});
  }
  CheckResult r{5, "characteristic-function duality", false, diff.value, 1e-7, "", sw.seconds()};
  r.pass = diff.value <= 1e-7 && at_zero <= 1e-12 && modulus <= 1.0 + 1e-8;
  r.detail = fmt("max |phi_dist - phi_dens| (worst at %s); |phi(0) - 1| = %.3g (tol 1e-12); "
                 "max |phi| = %.17g (tol 1 + 1e-8)",
                 diff.at.c_str(), at_zero, modulus);
  return r;
}

CheckResult distributional(const ValidationOptions& o) {
  Stopwatch sw;
  Worst sup;
  double mass_err = 0.0;
  Worst z;
  struct Case {
    double sigma, lambda, t;
  };
  for (const Case k : {Case{0.2, 0.5, kTau}, Case{0.1, 2.0, kTau}, Case{0.4, 0.5, 1.0}}) {
    const auto m = model(k.sigma, k.lambda);
    const std::string at = fmt("sigma=%g lambda=%g t=%g", k.sigma, k.lambda, k.t);
    const auto mv = mean_variance(k.t, m);
    const double sd = std::sqrt(mv.variance);
    for (int i = 0; i <= 120; ++i) {
      const double x = mv.mean - 6.0 * sd + i * (12.0 * sd / 120.0);
      sup.update(std::abs(density(x, k.t, m, o.policy) - density_fourier(x, k.t, m, o.policy).value),
                 at);
    }

    const auto terms = poisson_mixture(k.t, m, o.policy);
    std::vector<double> br;
    for (const auto& c : terms) {
      br.push_back(c.mean - 12.0 * c.sd);
      br.push_back(c.mean + 12.0 * c.sd);
    }
    const double lo = *std::min_element(br.begin(), br.end());
    const double hi = *std::max_element(br.begin(), br.end());
    std::vector<double> cuts{lo};
    for (const auto& c : terms)
      if (c.mean > lo && c.mean < hi) cuts.push_back(c.mean);
    cuts.push_back(hi);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    QuadOptions qo;
    qo.tol = 1e-12;
    const auto mass = integrate_breakpoints([&](double x) { return density(x, k.t, m, o.policy); },
                                            cuts, qo);
    mass_err = std::max(mass_err, std::abs(mass.value - 1.0));

    auto sample = sample_increments(k.t, m, o.cdf_samples, o.seed);
    std::sort(sample.begin(), sample.end());
    const double N = static_cast<double>(sample.size());
    for (int d = 1; d <= 9; ++d) {
      const double level = d / 10.0;
      std::uintmax_t iters = 200;
      const auto bracket = boost::math::tools::toms748_solve(
          [&](double x) { return cdf(x, k.t, m, o.policy) - level; }, lo, hi,
          boost::math::tools::eps_tolerance<double>(50), iters);
      const double q = 0.5 * (bracket.first + bracket.second);
      const double p = cdf(q, k.t, m, o.policy);
      const double emp = static_cast<double>(std::upper_bound(sample.begin(), sample.end(), q) -
                                             sample.begin()) /
                         N;
      z.update(std::abs(emp - p) / std::sqrt(p * (1.0 - p) / N), at + fmt(" decile %d", d));
    }
  }
  CheckResult r{6, "distributional layer", false, sup.value, 1e-7, "", sw.seconds()};
  r.pass = sup.value <= 1e-7 && mass_err <= 1e-8 && z.value <= 3.0;
  r.detail = fmt("sup |series - fourier| on mean +- 6 sd (worst at %s); |mass - 1| = %.3g "
                 "(tol 1e-8); empirical cdf max z %.3f (tol 3) at %s, %llu samples",
                 sup.at.c_str(), mass_err, z.value, z.at.c_str(),
                 static_cast<unsigned long long>(o.cdf_samples));
  return r;
}

CheckResult martingale(const ValidationOptions& o) {
  Stopwatch sw;
  Worst w;
  std::vector<std::pair<std::string, ModelParams>> models;
  for (double s : kSigmas)
    for (double l : kLambdas) models.emplace_back(fmt("sigma=%g lambda=%g", s, l), model(s, l));
  models.emplace_back("exponential jumps alpha=5",
                      risk_neutral_drift(kRate, 0.2, 0.5, JumpSpec::exponential(5.0)));
  for (const auto& [label, m] : models) {
    w.update(std::abs(characteristic_exponent(Complex{0.0, -1.0}, m) - m.r()), label);
  }
  const auto m = model(0.2, 0.5);
  const auto est = mc_exp_moment(kTau, m, mc_config(o, o.price_paths));
  const double z = std::abs(est.mean - std::exp(m.r() * kTau)) / est.std_error;
  CheckResult r{7, "martingale condition", false, w.value, 1e-12, "", sw.seconds()};
  r.pass = w.value <= 1e-12 && z <= 3.0;
  r.detail = fmt("max |psi(-i) - r| over 10 models (worst at %s); mc E[e^X] z-score %.3f (tol 3)",
                 w.at.c_str(), z);
  return r;
}

CheckResult greeks_check(const ValidationOptions& o) {
  Stopwatch sw;
  Worst identity;
  Worst routes;
  Worst fd;
  bool zeros = true;
  constexpr double h = 1e-4;
  for (const auto& p : grid()) {
    const auto t = contract(p.g);
    const auto m = model(p.sigma, p.lambda);
    const auto pr = price_fourier(t, m, o.policy);
    identity.update(rel(rho(t, m, o.policy), -t.T * pr.price), where(p));
    const auto dg = delta_gamma(t);
    zeros = zeros && dg.delta == 0.0 && dg.gamma == 0.0;

    const double vf = vega_fourier(t, m, o.policy);
    const double vd = vega_distribution(t, m, o.policy);
    routes.update(rel(vd, vf), where(p));

    const auto up = price_fourier(t, bump(m, BumpTarget::SigmaGammaFrozen, h), o.policy);
    const auto dn = price_fourier(t, bump(m, BumpTarget::SigmaGammaFrozen, -h), o.policy);
    const double fd_vega = (up.price - dn.price) / (2.0 * h);
    const double noise = (up.abs_error_estimate + up.tail_bound + dn.abs_error_estimate +
                          dn.tail_bound) /
                         (2.0 * h) / std::abs(fd_vega);
    const double allowed = std::max(1e-3, noise);
    fd.update(std::max(rel(vf, fd_vega), rel(vd, fd_vega)) / allowed, where(p));
  }
  CheckResult r{8, "Greeks", false, routes.value, 1e-4, "", sw.seconds()};
  r.pass = identity.value <= 1e-14 && zeros && routes.value <= 1e-4 && fd.value <= 1.0;
  r.detail = fmt("vega fourier vs distribution max rel (worst at %s); rho identity %.3g "
                 "(tol 1e-14); delta = gamma = 0: %s; vega vs central difference h=1e-4 "
                 "(gamma frozen) max rel/allowed %.3f (tol 1) at %s",
                 routes.at.c_str(), identity.value, zeros ? "yes" : "no", fd.value, fd.at.c_str());
  return r;
}

CheckResult black_scholes(const ValidationOptions& o) {
  Stopwatch sw;
  Worst w;
  for (double s : kSigmas) {
    const auto m = model(s, 0.0);
    const double v = s * s * kTau;
    const double fwd = std::exp(m.eta() * kTau);
    // One period: J = E[(min(c, R) - g)^+], a call spread on R.
    for (double g : {-0.01, 0.0, 0.005, 0.02}) {
      const auto t = contract(g, 1);
      const double spread =
          g < kCap ? lognormal_call(fwd, 1.0 + g, v) - lognormal_call(fwd, 1.0 + kCap, v) : 0.0;
      const double exact = t.K * std::exp(-m.r() * t.T) * (1.0 + g + spread);
      const std::string at = fmt("n=1 sigma=%g g=%g", s, g);
      w.update(rel(price_distribution(t, m, o.policy).price, exact), "distribution " + at);
      w.update(rel(price_fourier(t, m, o.policy).price, exact), "fourier " + at);
    }
    // Twelve periods: E[Z1] = c - g/n - E[(1 + c - e^X)^+].
    for (double g : kFloors) {
      const auto t = contract(g);
      const double exact = kCap - g / kPeriods - lognormal_put(fwd, 1.0 + kCap, v);
      w.update(rel(ez_closed(t, m, o.policy), exact), fmt("E[Z1] n=12 sigma=%g g=%g", s, g));
    }
  }
  CheckResult r{9, "Black-Scholes reduction (lambda = 0)", false, w.value, 1e-9, "",
                sw.seconds()};
  r.pass = r.measured <= r.tolerance;
  r.detail = "worst: " + w.at;
  return r;
}

CheckResult kernel(const ValidationOptions& o) {
  Stopwatch sw;
  Worst w;
  for (double a : {0.5, 1.0, 2.0}) {
    SemiInfiniteOptions so;
    so.tol = o.policy.quad_tol;
    so.cutoff = 200.0;
    so.max_panel_width = kPi / a;
    so.tail = [a](double X) {
      return TailEstimate{1.0 / X - inverse_square_fourier_tail(a, X).real(), 0.0};
    };
    const auto res = integrate_semi_infinite(
        [a](double x) {
          const double s = std::sin(0.5 * a * x);
          return 2.0 * s * s / (x * x);
        },
        so);
    w.update(std::abs(res.value - 0.5 * kPi * a), fmt("a=%g", a));
  }
  CheckResult r{10, "quadrature kernel self-test", false, w.value, o.policy.quad_tol, "",
                sw.seconds()};
  r.pass = r.measured <= r.tolerance;
  r.detail = "|integral of (1 - cos ax)/x^2 - pi a/2|, worst at " + w.at;
  return r;
}

}  // namespace

const std::vector<CheckDef>& validation_checks() {
  static const std::vector<CheckDef> checks{
      {1, price_equivalence}, {2, mc_bracket}, {3, degenerate},  {4, ez_agreement},
      {5, cf_duality},        {6, distributional}, {7, martingale}, {8, greeks_check},
      {9, black_scholes},     {10, kernel}};
  return checks;
}

std::vector<CheckResult> run_validation(const ValidationOptions& opt,
                                        const std::function<void(const CheckResult&)>& on_result) {
  std::vector<CheckResult> out;
  for (const auto& c : validation_checks()) {
    CheckResult r;
    try {
      r = c.run(opt);
    } catch (const std::exception& e) {
      r.id = c.id;
      r.name = "check " + std::to_string(c.id);
      r.pass = false;
      r.detail = std::string("threw: ") + e.what();
    }
    if (on_result) on_result(r);
    out.push_back(std::move(r));
  }
  return out;
}

std::string format_line(const CheckResult& r) {
  return fmt("%s %2d %s: measured %.3g (tol %.3g) [%.1f s]; ", r.pass ? "PASS" : "FAIL", r.id,
             r.name.c_str(), r.measured, r.tolerance, r.seconds) +
         r.detail;
}

}  // namespace cliquet::cli
