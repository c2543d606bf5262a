#include <doctest.h>

#include <cmath>

#include "cliquet/levy_model.hpp"
#include "fixtures.hpp"

using namespace cliquet;

TEST_SUITE("levy_model") {
  TEST_CASE("risk-neutral drift") {
    const auto m = fixtures::reference_model();
    // mpmath: 0.03 - 0.5*(exp(-0.1 + 0.15**2/2) - 1)
    CHECK(std::abs(m.eta() - 0.07246284322042382535) < 1e-16);
    CHECK(m.gamma() == m.eta() - 0.5 * 0.2 * 0.2);

    const auto bs = risk_neutral_drift(0.03, 0.25, 0.0, JumpSpec::normal(-0.1, 0.15));
    CHECK(bs.eta() == 0.03);
    CHECK(risk_neutral_drift(0.03, 0.2, 3.0, JumpSpec::normal(0.0, 0.0)).eta() == 0.03);

    const auto ex = risk_neutral_drift(0.03, 0.2, 0.5, JumpSpec::exponential(4.0));
    CHECK(ex.eta() == doctest::Approx(0.03 - 0.5 / 3.0).epsilon(1e-15));

    CHECK_THROWS_AS(risk_neutral_drift(0.03, 0.2, 0.5, JumpSpec::exponential(1.0)), DivergentExponentialMoment);
    CHECK_THROWS_AS(risk_neutral_drift(0.03, 0.0, 0.5, JumpSpec::normal(0, 0.1)), InvalidParam);
    CHECK_THROWS_AS(risk_neutral_drift(0.03, 0.2, -1.0, JumpSpec::normal(0, 0.1)), InvalidParam);
  }

  TEST_CASE("martingale identity psi(-i) = r") {
    for (double s : {0.1, 0.2, 0.4})
      for (double l : {0.0, 0.5, 2.0}) {
        const auto m = fixtures::reference_model(s, l);
        CHECK(std::abs(characteristic_exponent(Complex{0.0, -1.0}, m) - m.r()) < 1e-12);
      }
    const auto ex = risk_neutral_drift(0.03, 0.2, 0.5, JumpSpec::exponential(5.0));
    CHECK(std::abs(characteristic_exponent(Complex{0.0, -1.0}, ex) - 0.03) < 1e-12);
  }

  TEST_CASE("characteristic exponent") {
    const auto m = fixtures::reference_model();
    CHECK(characteristic_exponent(0.0, m) == Complex{0.0, 0.0});
    const auto bs = fixtures::reference_model(0.2, 0.0);
    const double u = 1.3;
    CHECK(std::abs(characteristic_exponent(u, bs) - Complex{-0.5 * 0.04 * u * u, u * bs.gamma()}) < 1e-15);

    SUBCASE("jump part against quadrature over the jump density") {
      QuadOptions o;
      o.tol = 1e-13;
      const double mu = -0.1;
      const double d = 0.15;
      const auto jump = integrate_finite(
          [&](double z) {
            const double dens = std::exp(-0.5 * (z - mu) * (z - mu) / (d * d)) / (d * std::sqrt(2.0 * kPi));
            return (Complex{std::cos(z), std::sin(z)} - 1.0) * dens;
          },
          mu - 10 * d, mu + 10 * d, o);
      const Complex brute = Complex{0.0, m.gamma()} - 0.5 * 0.04 + 0.5 * jump.value;
      CHECK(std::abs(characteristic_exponent(1.0, m) - brute) < 1e-9);
    }
  }

  TEST_CASE("char_function modulus and limits") {
    const auto m = fixtures::reference_model();
    CHECK(char_function(0.0, 1.0, m) == Complex{1.0, 0.0});
    CHECK(char_function(7.0, 0.0, m) == Complex{1.0, 0.0});
    for (double u = -60.0; u <= 60.0; u += 0.7) CHECK(std::abs(char_function(u, 0.5, m)) <= 1.0);
  }

  TEST_CASE("damped characteristic function: series equals closed form") {
    const auto m = fixtures::reference_model();
    const SeriesPolicy p;
    for (double a : {0.5, 1.0, 2.0}) {
      for (double y = -50.0; y <= 50.0; y += 2.5) {
        const Complex c = char_function_complex_closed(a, y, 1.0 / 12, m);
        const Complex s = char_function_complex_series(a, y, 1.0 / 12, m, p);
        CHECK(std::abs(c - s) <= 1e-10 * std::abs(c) + 1e-300);
      }
    }
    const auto bs = fixtures::reference_model(0.2, 0.0);
    const Complex z{1.0, 3.0};
    const Complex gauss = std::exp((1.0 / 12) * (z * z * 0.04 / 2.0 - z * bs.gamma()));
    CHECK(std::abs(char_function_complex(1.0, 3.0, 1.0 / 12, bs) - gauss) < 1e-15);
    CHECK(std::abs(char_function_complex(1e-9, 0.0, 1.0 / 12, m) - 1.0) < 1e-8);
    CHECK_THROWS_AS(char_function_complex(1.0, 0.0, 0.1, risk_neutral_drift(0.03, 0.2, 0.5, JumpSpec::exponential(3.0))),
                    UnsupportedJumpLaw);
  }

  TEST_CASE("Gaussian exponential moment identity") {
    const double mean = -0.02;
    const double var = 0.01;
    auto gauss = [&](double x) { return std::exp(-0.5 * (x - mean) * (x - mean) / var) / std::sqrt(2.0 * kPi * var); };
    QuadOptions o;
    o.tol = 1e-13;
    for (double b : {-2.0, -1.0, 1.0}) {
      const auto r = integrate_finite([&](double x) { return std::exp(b * x) * gauss(x); }, mean - 2.0, mean + 2.0, o);
      CHECK(r.value == doctest::Approx(std::exp(mean * b + var * b * b / 2)).epsilon(1e-12));
    }
    const Complex b{-1.0, -3.0};
    const auto r = integrate_finite([&](double x) { return std::exp(b * x) * gauss(x); }, mean - 2.0, mean + 2.0, o);
    CHECK(std::abs(r.value - std::exp(mean * b + var * b * b / 2.0)) < 1e-12);
  }

  TEST_CASE("density and cdf against high-precision mixture values") {
    // tests/oracles/frozen_values.py, sigma = 0.2, lambda = 0.5, t = 1/12
    const auto m = fixtures::reference_model();
    const double t = 1.0 / 12;
    struct Ref {
      double x, f, F;
    };
    for (const Ref r : {Ref{-0.1, 1.393935288042126737544782, 0.05399418449890242294472382},
                        Ref{0.0, 6.693046583330921027078599, 0.4802714388226320856544911},
                        Ref{0.05, 4.916711859353479639755482, 0.7866823165595302147875392}}) {
      CHECK(fixtures::rel_diff(density(r.x, t, m), r.f) < 1e-12);
      CHECK(std::abs(cdf(r.x, t, m) - r.F) < 1e-12);
    }
  }

  TEST_CASE("density properties") {
    const auto m = fixtures::reference_model();
    const double t = 1.0 / 12;
    const auto mv = mean_variance(t, m);
    const double sd = std::sqrt(mv.variance);
    for (double x = mv.mean - 6 * sd; x <= mv.mean + 6 * sd; x += 0.1 * sd) {
      CHECK(density(x, t, m) >= 0.0);
      CHECK(std::abs(density(x, t, m) - density_fourier(x, t, m).value) < 1e-7);
    }
    QuadOptions o;
    o.tol = 1e-12;
    const std::array<double, 4> br{-3.0, mv.mean - 0.2, mv.mean + 0.2, 2.0};
    CHECK(integrate_breakpoints([&](double x) { return density(x, t, m); }, br, o).value == doctest::Approx(1.0).epsilon(1e-8));

    const auto bs = fixtures::reference_model(0.2, 0.0);
    const double s = 0.2 * std::sqrt(t);
    const double z = (0.01 - bs.gamma() * t) / s;
    CHECK(density(0.01, t, bs) == doctest::Approx(normal_pdf(z) / s).epsilon(1e-14));
    CHECK(cdf(0.01, t, bs) == doctest::Approx(normal_cdf(z)).epsilon(1e-14));
  }

  TEST_CASE("density_fourier") {
    SUBCASE("symmetric model") {
      const auto sym = ModelParams::with_drift(0.0, 0.2, 1.0, JumpSpec::normal(0.0, 0.1), 0.02);
      REQUIRE(sym.gamma() == doctest::Approx(0.0));
      for (double x : {0.05, 0.2, 0.5}) {
        const auto a = density_fourier(x, 0.5, sym);
        const auto b = density_fourier(-x, 0.5, sym);
        CHECK(std::abs(a.value - b.value) < 1e-9);
        CHECK(a.imag_residual < 1e-9);
      }
    }
    SUBCASE("exponential jumps with a small intensity are close to the diffusion") {
      const auto ex = risk_neutral_drift(0.03, 0.2, 1e-6, JumpSpec::exponential(10.0));
      const auto bs = risk_neutral_drift(0.03, 0.2, 0.0, JumpSpec::normal(0, 0));
      for (double x : {-0.3, 0.0, 0.2}) CHECK(std::abs(density_fourier(x, 1.0, ex).value - density(x, 1.0, bs)) < 1e-5);
    }
  }

  TEST_CASE("cdf properties") {
    const auto m = fixtures::reference_model(0.1, 2.0);
    const double t = 1.0 / 12;
    double prev = 0.0;
    for (double a = -2.0; a <= 1.0; a += 0.01) {
      const double v = cdf(a, t, m);
      CHECK(v >= prev);
      CHECK(v <= 1.0);
      prev = v;
    }
    const auto mv = mean_variance(t, m);
    CHECK(cdf(m.gamma() * t + 40 * std::sqrt(mv.variance), t, m) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(cdf(0.0, t, risk_neutral_drift(0.03, 0.2, 0.5, JumpSpec::exponential(3.0))), UnsupportedJumpLaw);
    CHECK_THROWS_AS(density(0.0, 0.0, m), InvalidParam);
  }

  TEST_CASE("return and drawdown probabilities") {
    const auto m = fixtures::reference_model();
    const double tau = 1.0 / 12;
    CHECK(return_cdf(0.02, tau, m) == cdf(std::log1p(0.02), tau, m));
    CHECK(return_cdf(-1.0 + 1e-12, tau, m) < 1e-300);
    const auto bs = fixtures::reference_model(0.2, 0.0);
    CHECK(return_cdf(std::expm1(bs.gamma() * tau), tau, bs) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK_THROWS_AS(return_cdf(-1.0, tau, m), InvalidParam);

    const auto flat = ModelParams::with_drift(0.0, 0.2, 0.0, JumpSpec::normal(0, 0), 0.02);
    CHECK(drawdown_prob(1.0, 1.0, flat) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(drawdown_prob(std::exp(50.0), 1.0, m) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(drawdown_prob(0.6, 1.0, m) == cdf(std::log(0.6), 1.0, m));
    CHECK_THROWS_AS(drawdown_prob(0.0, 1.0, m), InvalidParam);
  }

  TEST_CASE("mean and variance") {
    const auto m = fixtures::reference_model();
    const auto mv = mean_variance(2.0, m);
    CHECK(mv.mean == doctest::Approx(2.0 * (m.gamma() + 0.5 * -0.1)).epsilon(1e-15));
    CHECK(mv.variance == doctest::Approx(2.0 * (0.04 + 0.5 * 0.0225 + 0.5 * 0.01)).epsilon(1e-15));
    const auto zero = mean_variance(0.0, m);
    CHECK(zero.mean == 0.0);
    CHECK(zero.variance == 0.0);
  }

  TEST_CASE("Poisson mixture terms") {
    const auto m = fixtures::reference_model();
    const auto terms = poisson_mixture(1.0 / 12, m, SeriesPolicy{});
    double w = 0.0;
    for (const auto& t : terms) {
      w += t.weight;
      CHECK(t.variance == doctest::Approx(0.04 / 12 + t.jumps * 0.0225).epsilon(1e-15));
      CHECK(t.mean == doctest::Approx(m.gamma() / 12 - 0.1 * t.jumps).epsilon(1e-14));
    }
    CHECK(w >= 1.0 - 1e-12);
    SeriesPolicy tight;
    tight.max_terms = 2;
    CHECK_THROWS_AS(poisson_mixture(1.0, fixtures::reference_model(0.2, 20.0), tight), TruncationBudgetExceeded);
  }
}
