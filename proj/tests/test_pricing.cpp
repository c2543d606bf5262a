#include <doctest.h>

#include <cmath>
#include <string>

#include "cliquet/cliquet_pricing.hpp"
#include "fixtures.hpp"

using namespace cliquet;
using fixtures::monthly;
using fixtures::reference_model;
using fixtures::rel_diff;

namespace {

double floor_value(const ContractTerms& t, const ModelParams& m) {
  return t.K * std::exp(-m.r() * t.T) * (1.0 + t.g);
}

}  // namespace

TEST_SUITE("cliquet_pricing") {
  TEST_CASE("contract validation names the field") {
    CHECK_NOTHROW(monthly().validate());
    auto t = monthly();
    t.c = -0.01;
    try {
      t.validate();
      FAIL("expected InvalidContract");
    } catch (const InvalidContract& e) {
      CHECK(std::string(e.what()).find("contract.c") != std::string::npos);
    }
    CHECK_THROWS_AS(ContractTerms::equidistant(1000, 1.0, 0.0, 0.01, 0, 0.1), InvalidContract);
    CHECK_THROWS_AS(ContractTerms::equidistant(1000, 1.0, 0.0, 0.01, 12, 0.0), InvalidContract);
    auto late = monthly();
    late.tau = 0.2;
    CHECK_THROWS_AS(late.validate(), InvalidContract);
    CHECK(monthly(0.02).rho() == doctest::Approx(0.1));
  }

  TEST_CASE("E[Z1] against high-precision values") {
    // tests/oracles/frozen_values.py
    const auto m = reference_model();
    const SeriesPolicy p;
    CHECK(std::abs(ez_closed(monthly(0.0), m, p) - -0.0190270213846525487849871) < 1e-13);
    CHECK(std::abs(ez_closed(monthly(0.02), m, p) - -0.02069368805131921545165377) < 1e-13);
    CHECK(std::abs(ez_distribution(monthly(0.0), m, p) - -0.0190270213846525487849871) < 1e-10);
    CHECK(std::abs(ez_fourier(monthly(0.0), m, p) - -0.0190270213846525487849871) < 1e-10);
  }

  TEST_CASE("E[Z1] routes and properties") {
    const SeriesPolicy p;
    for (double s : {0.1, 0.4})
      for (double l : {0.0, 2.0}) {
        const auto m = reference_model(s, l);
        const auto t = monthly(0.02);
        const double closed = ez_closed(t, m, p);
        CHECK(std::abs(ez_distribution(t, m, p) - closed) < 1e-6);
        CHECK(closed <= t.c - t.g / t.n);
        const double a1 = ez_fourier(t, m, p, 1.0);
        CHECK(std::abs(a1 - closed) < 1e-6);
        for (double a : {0.5, 0.75, 1.5, 2.0}) CHECK(std::abs(ez_fourier(t, m, p, a) - a1) < 1e-7);
      }
    SUBCASE("large cap recovers the martingale mean") {
      const auto m = reference_model();
      const auto t = ContractTerms::equidistant(1000, 13.0 / 12, 0.02, 10.0, 12, 1.0 / 12);
      CHECK(std::abs(ez_closed(t, m, p) - (std::expm1(0.03 / 12) - 0.02 / 12)) < 1e-6);
    }
    SUBCASE("floor shift") {
      const auto m = reference_model();
      CHECK(ez_closed(monthly(0.024), m, p) - ez_closed(monthly(0.0), m, p) == doctest::Approx(-0.002).epsilon(1e-12));
    }
    CHECK_THROWS_AS(ez_fourier(monthly(), reference_model(), p, 0.0), InvalidParam);
  }

  TEST_CASE("characteristic function of Z1") {
    const auto m = reference_model();
    const auto t = monthly(0.02);
    const SeriesPolicy p;
    CHECK(std::abs(phi_z1_distribution(0.0, t, m, p) - 1.0) < 1e-15);
    CHECK(std::abs(phi_z1_density(0.0, t, m, p) - 1.0) < 1e-15);
    for (double x : {0.5, 1.0, 5.0, 20.0, 50.0}) {
      const Complex a = phi_z1_distribution(x, t, m, p);
      const Complex b = phi_z1_density(x, t, m, p);
      CHECK(std::abs(a - b) < 1e-7);
      CHECK(std::abs(a) <= 1.0 + 10 * p.quad_tol);
      CHECK(std::abs(phi_z1_density(-x, t, m, p) - std::conj(b)) < 1e-12);
    }
    const double h = 1e-5;
    const Complex deriv = (phi_z1_density(h, t, m, p) - phi_z1_density(-h, t, m, p)) / (2.0 * h);
    CHECK(std::abs(deriv / Complex{0.0, 1.0} - ez_closed(t, m, p)) < 1e-5);
  }

  TEST_CASE("two-period price against direct integration") {
    // tests/oracles/frozen_values.py: E[(2c - g - D1 - D2)^+] by nested quadrature.
    const auto m = reference_model();
    const SeriesPolicy p;
    struct Ref {
      double g, price;
    };
    for (const Ref r : {Ref{0.0, 997.8599987859100931625232}, Ref{0.005, 1001.245413141957414224088}}) {
      const auto t = monthly(r.g, 2);
      CHECK(rel_diff(price_distribution(t, m, p).price, r.price) < 1e-12);
      CHECK(rel_diff(price_fourier(t, m, p).price, r.price) < 1e-12);
    }
  }

  TEST_CASE("cross-method agreement and diagnostics") {
    const SeriesPolicy p;
    for (double s : {0.1, 0.2, 0.4})
      for (double l : {0.0, 0.5, 2.0}) {
        const auto m = reference_model(s, l);
        const auto t = monthly(0.0);
        const auto a = price_distribution(t, m, p);
        const auto b = price_fourier(t, m, p);
        CHECK(rel_diff(a.price, b.price) < 1e-10);
        CHECK(a.method == PricingMethod::DistributionFn);
        CHECK(b.method == PricingMethod::Fourier);
        for (const auto& r : {a, b}) {
          CHECK(r.imag_residual <= 10 * p.quad_tol);
          CHECK(r.tail_bound >= 0.0);
          CHECK(r.abs_error_estimate >= 0.0);
          CHECK(r.price >= floor_value(t, m) - 10 * p.quad_tol);
          CHECK(r.price <= t.K * std::exp(-m.r() * t.T) * (1 + t.g + std::max(0.0, t.rho())) + 10 * p.quad_tol);
          CHECK(r.ez1 == ez_closed(t, m, p));
        }
      }
  }

  TEST_CASE("degenerate contracts") {
    const auto m = reference_model();
    const SeriesPolicy p;
    SUBCASE("nc = g prices the floor exactly") {
      const auto t = monthly(0.12);
      CHECK(rel_diff(price_distribution(t, m, p).price, floor_value(t, m)) < 1e-10);
      CHECK(rel_diff(price_fourier(t, m, p).price, floor_value(t, m)) < 1e-10);
    }
    SUBCASE("g above nc leaves only the floor") {
      const auto t = monthly(0.2);
      CHECK(rel_diff(price_distribution(t, m, p).price, floor_value(t, m)) < 1e-10);
      CHECK(rel_diff(price_fourier(t, m, p).price, floor_value(t, m)) < 1e-10);
    }
    SUBCASE("no cap and no floor") {
      const auto t = monthly(0.0, 12, 0.0);
      CHECK(rel_diff(price_fourier(t, m, p).price, t.K * std::exp(-m.r() * t.T)) < 1e-10);
      CHECK(rel_diff(price_distribution(t, m, p).price, t.K * std::exp(-m.r() * t.T)) < 1e-10);
    }
  }

  TEST_CASE("monotone in cap and floor") {
    const auto m = reference_model();
    const SeriesPolicy p;
    double prev = 0.0;
    for (double c : {0.0, 0.005, 0.01, 0.02, 0.04}) {
      const double v = price_fourier(monthly(0.0, 12, c), m, p).price;
      CHECK(v >= prev);
      prev = v;
    }
    prev = 0.0;
    for (double g : {-0.02, 0.0, 0.02, 0.05, 0.12, 0.2}) {
      const double v = price_distribution(monthly(g), m, p).price;
      CHECK(v >= prev);
      prev = v;
    }
  }

  TEST_CASE("start date only enters through discounting") {
    const auto m = reference_model();
    const SeriesPolicy p;
    const auto early = ContractTerms::equidistant(1000, 0.1 + 1.0, 0.0, 0.01, 12, 0.1);
    const auto late = ContractTerms::equidistant(1000, 2.0 + 1.0, 0.0, 0.01, 12, 2.0);
    const double a = price_fourier(early, m, p).price * std::exp(m.r() * early.T);
    const double b = price_fourier(late, m, p).price * std::exp(m.r() * late.T);
    CHECK(rel_diff(a, b) < 1e-14);
  }

  TEST_CASE("payoff transform numerator") {
    for (double th : {1e-6, 0.01, 0.2, 0.3, 2.0}) {
      const Complex direct = 1.0 + Complex{0.0, th} - Complex{std::cos(th), std::sin(th)};
      CHECK(std::abs(payoff_transform_numerator(th) - direct) <= 1e-15 + 1e-9 * std::abs(direct));
    }
    const double rho = 0.1;
    const double y = 1e-6;
    CHECK((payoff_transform_numerator(y * rho) / (y * y)).real() == doctest::Approx(rho * rho / 2).epsilon(1e-10));
  }

  TEST_CASE("unsupported jump law") {
    const auto ex = risk_neutral_drift(0.03, 0.2, 0.5, JumpSpec::exponential(3.0));
    CHECK_THROWS_AS(price_fourier(monthly(), ex, SeriesPolicy{}), UnsupportedJumpLaw);
    CHECK_THROWS_AS(price_distribution(monthly(), ex, SeriesPolicy{}), UnsupportedJumpLaw);
  }
}
