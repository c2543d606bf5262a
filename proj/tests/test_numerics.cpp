#include <doctest.h>

#include <cmath>
#include <numeric>

#include "cliquet/numerics.hpp"

using namespace cliquet;

TEST_SUITE("numerics") {
  TEST_CASE("normal_cdf symmetry and reference value") {
    CHECK(normal_cdf(0.0) == 0.5);
    for (double x : {0.5, 1.0, 3.0}) CHECK(normal_cdf(-x) + normal_cdf(x) == doctest::Approx(1.0).epsilon(1e-15));
    // mpmath.ncdf(1.96)
    CHECK(std::abs(normal_cdf(1.96) - 0.975002104851779563787) < 1e-15);
    // mpmath.ncdf(-37)
    CHECK(normal_cdf(-37.0) == doctest::Approx(5.725571222524e-300).epsilon(1e-12));
  }

  TEST_CASE("normal_quantile inverts normal_cdf") {
    for (double p : {1e-12, 0.01, 0.3, 0.5, 0.9, 1.0 - 1e-9}) {
      CHECK(normal_cdf(normal_quantile(p)) == doctest::Approx(p).epsilon(1e-12));
    }
    CHECK(normal_pdf(0.0) == doctest::Approx(1.0 / std::sqrt(2.0 * kPi)));
  }

  TEST_CASE("poisson_weights") {
    SUBCASE("zero rate is a point mass") {
      const auto w = poisson_weights(0.0, 1e-12, 10);
      REQUIRE(w.size() == 1);
      CHECK(w[0] == 1.0);
    }
    SUBCASE("rate one reaches the tail bound in 15 to 20 terms") {
      const auto w = poisson_weights(1.0, 1e-12, 200);
      const double sum = std::accumulate(w.begin(), w.end(), 0.0);
      CHECK(sum >= 1.0 - 1e-12);
      CHECK(sum <= 1.0 + 1e-15);
      CHECK(w.size() >= 14);
      CHECK(w.size() <= 21);
      double direct = std::exp(-1.0);
      for (std::size_t m = 0; m < w.size(); ++m) {
        if (m > 0) direct /= static_cast<double>(m);
        CHECK(w[m] == doctest::Approx(direct).epsilon(1e-14));
      }
    }
    SUBCASE("large rates stay finite") {
      const auto w = poisson_weights(1e4, 1e-12, 20000);
      const double sum = std::accumulate(w.begin(), w.end(), 0.0);
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-10));
      for (double x : w) CHECK(std::isfinite(x));
    }
    SUBCASE("budget") {
      CHECK_THROWS_AS(poisson_weights(50.0, 1e-12, 5), TruncationBudgetExceeded);
      CHECK_THROWS_AS(poisson_weights(-1.0, 1e-12, 5), InvalidParam);
    }
  }

  TEST_CASE("integrate_finite") {
    QuadOptions o;
    o.tol = 1e-13;
    CHECK(integrate_finite([](double) { return 1.0; }, 0.0, 1.0, o).value == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(integrate_finite([](double x) { return std::cos(x); }, 0.0, 2.0 * kPi, o).value) < 1e-13);

    SUBCASE("polynomials up to the rule degree are exact") {
      for (int d = 0; d <= 20; ++d) {
        const auto r = integrate_finite([d](double x) { return std::pow(x, d); }, 0.0, 1.0, o);
        CHECK(std::abs(r.value - 1.0 / (d + 1)) < 1e-13);
      }
    }
    SUBCASE("complex oscillatory integrand") {
      QuadOptions q;
      q.tol = 1e-12;
      const auto r = integrate_finite([](double w) { return Complex{std::cos(10 * w), std::sin(10 * w)}; }, 0.0, 1.0, q);
      const Complex exact = (Complex{std::cos(10.0), std::sin(10.0)} - 1.0) / Complex{0.0, 10.0};
      CHECK(std::abs(r.value - exact) < 1e-12);
      CHECK(r.abs_error_estimate >= 0.0);
    }
    SUBCASE("errors") {
      CHECK_THROWS_AS(integrate_finite([](double) { return 0.0; }, 1.0, 0.0), InvalidParam);
      QuadOptions tiny;
      tiny.tol = 1e-15;
      tiny.max_panels = 3;
      CHECK_THROWS_AS(integrate_finite([](double x) { return std::sqrt(x); }, 0.0, 1.0, tiny), QuadratureFailure);
    }
  }

  TEST_CASE("integrate_semi_infinite") {
    SUBCASE("(1 - cos ax)/x^2 = pi a / 2") {
      for (double a : {0.5, 1.0, 2.0}) {
        SemiInfiniteOptions so;
        so.tol = 1e-10;
        so.cutoff = 100.0;
        so.max_panel_width = kPi / a;
        so.tail = [a](double X) { return TailEstimate{1.0 / X - inverse_square_fourier_tail(a, X).real(), 0.0}; };
        // 1 - cos(ax) written as 2 sin^2(ax/2) to keep precision near 0.
        const auto r = integrate_semi_infinite(
            [a](double x) {
              const double s = std::sin(0.5 * a * x);
              return 2.0 * s * s / (x * x);
            },
            so);
        CHECK(std::abs(r.value - 0.5 * kPi * a) < 1e-9);
      }
    }
    SUBCASE("zero integrand") {
      SemiInfiniteOptions so;
      so.cutoff = 10.0;
      CHECK(integrate_semi_infinite([](double) { return 0.0; }, so).value == 0.0);
    }
    SUBCASE("exp(-x)/(1 + x^2) against a high-precision value") {
      SemiInfiniteOptions so;
      so.tol = 1e-12;
      so.cutoff = 60.0;
      so.tail = [](double) { return TailEstimate{0.0, 1e-26}; };
      const auto r = integrate_semi_infinite([](double x) { return std::exp(-x) / (1.0 + x * x); }, so);
      // mpmath.quad(lambda x: exp(-x)/(1+x**2), [0, inf])
      CHECK(std::abs(r.value - 0.6214496242358133576) < 1e-11);
      CHECK(r.tail_bound >= 0.0);
    }
  }

  TEST_CASE("oscillatory tail integrals") {
    // Brute force up to 4000, then two terms of the integration-by-parts expansion.
    for (double omega : {0.3, -1.7}) {
      for (int k : {2, 3, 5}) {
        const double x = 4.0;
        QuadOptions o;
        o.tol = 1e-13;
        o.max_panel_width = 1.0;
        o.max_panels = 400000;
        const auto head = integrate_finite(
            [&](double t) { return Complex{std::cos(omega * t), std::sin(omega * t)} * std::pow(t, -k); }, x, 4000.0, o);
        const double X = 4000.0;
        const Complex e{std::cos(omega * X), std::sin(omega * X)};
        const Complex rest = e * (Complex{0.0, 1.0 / (omega * std::pow(X, k))} + k / (omega * omega * std::pow(X, k + 1)));
        CHECK(std::abs(head.value + rest - power_fourier_tail(k, omega, x)) < 1e-11);
      }
      CHECK(std::abs(power_fourier_tail(2, omega, 3.0) - inverse_square_fourier_tail(omega, 3.0)) < 1e-13);
    }
    CHECK(std::abs(power_fourier_tail(3, 0.0, 2.0) - Complex{0.125, 0.0}) < 1e-15);
    CHECK_THROWS_AS(exponential_integral_en(0, Complex{1.0, 0.0}), InvalidParam);
  }
}
