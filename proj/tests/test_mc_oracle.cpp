#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "cliquet/mc_oracle.hpp"
#include "fixtures.hpp"

using namespace cliquet;
using fixtures::monthly;
using fixtures::reference_model;

namespace {

McConfig config(std::uint64_t paths, std::uint64_t seed = 7, bool antithetic = true, unsigned threads = 0) {
  McConfig mc;
  mc.n_paths = paths;
  mc.seed = seed;
  mc.antithetic = antithetic;
  mc.threads = threads;
  return mc;
}

}  // namespace

TEST_SUITE("mc_oracle") {
  TEST_CASE("generator") {
    PathRng a(3, 11);
    PathRng b(3, 11);
    PathRng c(3, 12);
    for (int i = 0; i < 100; ++i) {
      const auto x = a.next_u64();
      CHECK(x == b.next_u64());
      CHECK(x != c.next_u64());
    }
    PathRng u(1, 0);
    double mean = 0.0;
    for (int i = 0; i < 100000; ++i) {
      const double v = u.uniform();
      CHECK(v > 0.0);
      CHECK(v < 1.0);
      mean += v;
    }
    CHECK(std::abs(mean / 100000 - 0.5) < 4 * std::sqrt(1.0 / 12 / 100000));
    PathRng q(2, 0);
    double total = 0.0;
    for (int i = 0; i < 20000; ++i) total += static_cast<double>(q.poisson(120.0));
    CHECK(std::abs(total / 20000 - 120.0) < 4 * std::sqrt(120.0 / 20000));
    CHECK_THROWS_AS(q.poisson(-1.0), InvalidParam);
  }

  TEST_CASE("sample_increment") {
    const auto still = ModelParams::with_drift(0.03, 1e-8, 0.0, JumpSpec::normal(0, 0), 0.05);
    PathRng rng(1, 0);
    CHECK(sample_increment(0.5, still, rng) == doctest::Approx(0.5 * still.gamma()).epsilon(1e-6));

    const auto m = reference_model();
    const double tau = 1.0 / 12;
    const auto xs = sample_increments(tau, m, 1'000'000, 99);
    const auto mv = mean_variance(tau, m);
    double s = 0.0;
    double s2 = 0.0;
    for (double x : xs) {
      s += x;
      s2 += x * x;
    }
    const double n = static_cast<double>(xs.size());
    const double mean = s / n;
    const double var = s2 / n - mean * mean;
    CHECK(std::abs(mean - mv.mean) < 4 * std::sqrt(mv.variance / n));
    CHECK(std::abs(var - mv.variance) / mv.variance < 0.01);
    CHECK(sample_increments(tau, m, 10, 99) == std::vector<double>(xs.begin(), xs.begin() + 10));
    CHECK_THROWS_AS(sample_increment(0.0, m, rng), InvalidParam);
  }

  TEST_CASE("empirical cdf at deciles") {
    const auto m = reference_model(0.1, 2.0);
    const double tau = 1.0 / 12;
    auto xs = sample_increments(tau, m, 200'000, 5);
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    for (int d = 1; d <= 9; ++d) {
      const double q = xs[static_cast<std::size_t>(d * n / 10)];
      const double p = cdf(q, tau, m);
      const double emp = static_cast<double>(std::upper_bound(xs.begin(), xs.end(), q) - xs.begin()) / n;
      CHECK(std::abs(emp - p) < 3 * std::sqrt(p * (1 - p) / n) + 1.0 / n);
    }
  }

  TEST_CASE("exponential jumps: histogram against Fourier density") {
    const auto m = risk_neutral_drift(0.03, 0.2, 0.5, JumpSpec::exponential(10.0));
    const double t = 1.0;
    const std::size_t N = 200'000;
    const auto xs = sample_increments(t, m, N, 17);
    QuadOptions o;
    o.tol = 1e-10;
    for (double lo = -0.4; lo < 0.6; lo += 0.1) {
      const double hi = lo + 0.1;
      const double p = integrate_finite([&](double x) { return density_fourier(x, t, m).value; }, lo, hi, o).value;
      const double count = static_cast<double>(std::count_if(xs.begin(), xs.end(), [&](double x) { return x >= lo && x < hi; }));
      CHECK(std::abs(count / N - p) < 3 * std::sqrt(p * (1 - p) / N));
    }
  }

  TEST_CASE("determinism across runs and thread counts") {
    const auto m = reference_model();
    const auto t = monthly();
    const auto a = mc_price(t, m, config(50'000, 3, true, 1));
    const auto b = mc_price(t, m, config(50'000, 3, true, 4));
    const auto c = mc_price(t, m, config(50'000, 3, true, 0));
    CHECK(a.mean == b.mean);
    CHECK(a.std_error == b.std_error);
    CHECK(a.mean == c.mean);
    CHECK(a.n_paths == 50'000);
    CHECK(a.seed == 3);
    CHECK(mc_price(t, m, config(50'000, 4)).mean != a.mean);
  }

  TEST_CASE("exact degenerate payoffs") {
    const auto m = reference_model();
    const auto flat = mc_price(monthly(0.0, 12, 0.0), m, config(10'000));
    const auto t0 = monthly(0.0, 12, 0.0);
    CHECK(flat.mean == doctest::Approx(t0.K * std::exp(-m.r() * t0.T)).epsilon(1e-15));
    CHECK(flat.std_error < 1e-9);
    const auto t1 = monthly(0.12);
    CHECK(mc_price(t1, m, config(10'000)).mean == doctest::Approx(t1.K * std::exp(-m.r() * t1.T) * 1.12).epsilon(1e-15));
  }

  TEST_CASE("E[Z1] estimates") {
    const auto m = reference_model();
    const SeriesPolicy p;
    const auto e = mc_ez1(monthly(), m, config(1'000'000));
    CHECK(std::abs(e.mean - ez_closed(monthly(), m, p)) < 3 * e.std_error);
    CHECK(mc_ez1(monthly(0.0, 12, 0.0), m, config(10'000)).mean < 0.0);
    const auto shifted = mc_ez1(monthly(0.024), m, config(1'000'000));
    CHECK(shifted.mean - e.mean == doctest::Approx(-0.002).epsilon(1e-9));
  }

  TEST_CASE("price bracket and martingale") {
    const auto m = reference_model();
    const auto t = monthly();
    const SeriesPolicy p;
    const auto est = mc_price(t, m, config(200'000));
    CHECK(std::abs(est.mean - price_fourier(t, m, p).price) < 3 * est.std_error);
    const auto g = mc_exp_moment(1.0 / 12, m, config(1'000'000));
    CHECK(std::abs(g.mean - std::exp(0.03 / 12)) < 3 * g.std_error);
  }

  TEST_CASE("antithetic pairing reduces the standard error") {
    const auto m = reference_model();
    const auto t = monthly();
    const auto anti = mc_price(t, m, config(200'000, 1, true));
    const auto plain = mc_price(t, m, config(200'000, 1, false));
    CHECK(anti.std_error <= plain.std_error);
  }

  TEST_CASE("spot cancels from the returns") {
    const auto m = reference_model();
    const auto t = monthly();
    const auto a = mc_price_spot(t, m, config(100'000), 100.0);
    const auto b = mc_price_spot(t, m, config(100'000), 4321.0);
    CHECK(std::abs(a.mean - b.mean) < 1e-9 * a.mean);
    CHECK(std::abs(a.mean - price_fourier(t, m, SeriesPolicy{}).price) < 3 * a.std_error);
    CHECK_THROWS_AS(mc_price_spot(t, m, config(10), 0.0), InvalidParam);
  }

  TEST_CASE("config validation") {
    CHECK_THROWS_AS(mc_price(monthly(), reference_model(), config(0)), InvalidParam);
  }
}
