#include "cliquet/mc_oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace cliquet {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
constexpr std::uint64_t kBlock = 4096;

std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct RunningStats {
  double count = 0.0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    count += 1.0;
    const double d = x - mean;
    mean += d / count;
    m2 += d * (x - mean);
  }

  void merge(const RunningStats& o) {
    if (o.count == 0.0) return;
    const double n = count + o.count;
    const double d = o.mean - mean;
    mean += d * o.count / n;
    m2 += o.m2 + d * d * count * o.count / n;
    count = n;
  }
};

// Draws one sampling unit per index: a single path, or the mean of an
// antithetic pair. Blocks are reduced in index order.
template <class Unit>
McEstimate simulate(const McConfig& mc, Unit unit) {
  mc.validate();
  const std::uint64_t units = mc.antithetic ? (mc.n_paths + 1) / 2 : mc.n_paths;
  const std::uint64_t blocks = (units + kBlock - 1) / kBlock;
  std::vector<RunningStats> partial(blocks);
  std::atomic<std::uint64_t> next{0};

  auto worker = [&]() {
    for (;;) {
      const std::uint64_t b = next.fetch_add(1);
      if (b >= blocks) return;
      RunningStats acc;
      const std::uint64_t end = std::min(units, (b + 1) * kBlock);
      for (std::uint64_t i = b * kBlock; i < end; ++i) {
        PathRng rng(mc.seed, i);
        if (mc.antithetic) {
          const auto [a, z] = unit(rng, true);
          acc.add(0.5 * (a + z));
        } else {
          acc.add(unit(rng, false).first);
        }
      }
      partial[b] = acc;
    }
  };

  unsigned threads = mc.threads ? mc.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, blocks));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  RunningStats total;
  for (const auto& p : partial) total.merge(p);
  McEstimate est;
  est.mean = total.mean;
  est.std_error = total.count > 1.0 ? std::sqrt(total.m2 / (total.count - 1.0) / total.count) : 0.0;
  est.n_paths = mc.antithetic ? 2 * units : units;
  est.seed = mc.seed;
  return est;
}

double jump_sum(std::uint64_t count, const JumpSpec& j, PathRng& rng) {
  double s = 0.0;
  for (std::uint64_t k = 0; k < count; ++k) {
    if (j.kind == JumpLaw::Normal) {
      s += j.mu + j.delta * rng.normal();
    } else {
      s += -std::log(rng.uniform()) / j.alpha;
    }
  }
  return s;
}

void require_time(double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw InvalidParam("Monte Carlo: tau must be > 0");
}

}  // namespace

void McConfig::validate() const {
  if (n_paths < 1) throw InvalidParam("mc.n_paths must be >= 1");
}

PathRng::PathRng(std::uint64_t seed, std::uint64_t path_index)
    : state_(mix(seed ^ mix(path_index + kGolden))) {}

std::uint64_t PathRng::next_u64() {
  state_ += kGolden;
  return mix(state_);
}

double PathRng::uniform() {
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double PathRng::normal() { return normal_quantile(uniform()); }

std::uint64_t PathRng::poisson(double rate) {
  if (!(rate >= 0.0) || !std::isfinite(rate)) throw InvalidParam("poisson: rate must be >= 0");
  std::uint64_t total = 0;
  // Chunks keep e^{-rate} well away from underflow.
  while (rate > 0.0) {
    const double r = std::min(rate, 50.0);
    rate -= r;
    double p = std::exp(-r);
    double cdf = p;
    const double u = uniform();
    std::uint64_t k = 0;
    while (u > cdf && p > 0.0) {
      ++k;
      p *= r / static_cast<double>(k);
      cdf += p;
    }
    total += k;
  }
  return total;
}

double sample_increment(double tau, const ModelParams& m, PathRng& rng) {
  require_time(tau);
  const double g = rng.normal();
  const std::uint64_t jumps = m.lambda() > 0.0 ? rng.poisson(m.lambda() * tau) : 0;
  return m.gamma() * tau + m.sigma() * std::sqrt(tau) * g + jump_sum(jumps, m.jumps(), rng);
}

std::pair<double, double> sample_increment_pair(double tau, const ModelParams& m, PathRng& rng) {
  require_time(tau);
  const double g = rng.normal();
  const std::uint64_t jumps = m.lambda() > 0.0 ? rng.poisson(m.lambda() * tau) : 0;
  const double common = m.gamma() * tau + jump_sum(jumps, m.jumps(), rng);
  const double diff = m.sigma() * std::sqrt(tau) * g;
  return {common + diff, common - diff};
}

std::vector<double> sample_increments(double tau, const ModelParams& m, std::uint64_t n,
                                      std::uint64_t seed) {
  std::vector<double> out(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    PathRng rng(seed, i);
    out[i] = sample_increment(tau, m, rng);
  }
  return out;
}

McEstimate mc_price(const ContractTerms& terms, const ModelParams& m, const McConfig& mc) {
  terms.validate();
  const double disc = terms.K * std::exp(-m.r() * terms.T);
  const double shift = terms.g / terms.n;
  auto payoff = [&](double sum_z) { return disc * (1.0 + terms.g + std::max(0.0, sum_z)); };
  return simulate(mc, [&](PathRng& rng, bool anti) {
    double za = 0.0;
    double zb = 0.0;
    for (int k = 0; k < terms.n; ++k) {
      const auto [xa, xb] = sample_increment_pair(terms.tau, m, rng);
      za += std::min(terms.c, std::expm1(xa)) - shift;
      if (anti) zb += std::min(terms.c, std::expm1(xb)) - shift;
    }
    return std::pair<double, double>{payoff(za), anti ? payoff(zb) : 0.0};
  });
}

McEstimate mc_ez1(const ContractTerms& terms, const ModelParams& m, const McConfig& mc) {
  terms.validate();
  const double shift = terms.g / terms.n;
  return simulate(mc, [&](PathRng& rng, bool) {
    const auto [xa, xb] = sample_increment_pair(terms.tau, m, rng);
    return std::pair<double, double>{std::min(terms.c, std::expm1(xa)) - shift,
                                     std::min(terms.c, std::expm1(xb)) - shift};
  });
}

McEstimate mc_exp_moment(double tau, const ModelParams& m, const McConfig& mc) {
  require_time(tau);
  return simulate(mc, [&](PathRng& rng, bool) {
    const auto [xa, xb] = sample_increment_pair(tau, m, rng);
    return std::pair<double, double>{std::exp(xa), std::exp(xb)};
  });
}

McEstimate mc_price_spot(const ContractTerms& terms, const ModelParams& m, const McConfig& mc,
                         double spot) {
  terms.validate();
  if (!(spot > 0.0)) throw InvalidParam("mc_price_spot: spot must be > 0");
  const double disc = terms.K * std::exp(-m.r() * terms.T);
  const double shift = terms.g / terms.n;
  return simulate(mc, [&](PathRng& rng, bool) {
    const auto [ya, yb] = sample_increment_pair(terms.t0, m, rng);
    double sa = spot * std::exp(ya);
    double sb = spot * std::exp(yb);
    double za = 0.0;
    double zb = 0.0;
    for (int k = 0; k < terms.n; ++k) {
      const auto [xa, xb] = sample_increment_pair(terms.tau, m, rng);
      const double na = sa * std::exp(xa);
      const double nb = sb * std::exp(xb);
      za += std::min(terms.c, na / sa - 1.0) - shift;
      zb += std::min(terms.c, nb / sb - 1.0) - shift;
      sa = na;
      sb = nb;
    }
    return std::pair<double, double>{disc * (1.0 + terms.g + std::max(0.0, za)),
                                     disc * (1.0 + terms.g + std::max(0.0, zb))};
  });
}

}  // namespace cliquet
