#pragma once

// Monte Carlo sampler and pricer for the jump-diffusion model. Every path owns
// a splitmix64 substream keyed by (seed, path index) and paths are reduced in
// fixed blocks, so estimates are bit-identical for any number of threads.

#include <cstdint>
#include <vector>

#include "cliquet/cliquet_pricing.hpp"
#include "cliquet/levy_model.hpp"

namespace cliquet {

struct McConfig {
  std::uint64_t n_paths = 100000;
  std::uint64_t seed = 1;
  /// Pairs each path with its mirror in the diffusion normal.
  bool antithetic = true;
  /// Worker threads; 0 picks the hardware concurrency.
  unsigned threads = 0;

  void validate() const;
};

struct McEstimate {
  double mean = 0.0;
  /// Sample standard deviation of the i.i.d. samples (antithetic pair means
  /// when pairing) over the square root of their count.
  double std_error = 0.0;
  std::uint64_t n_paths = 0;
  std::uint64_t seed = 0;
};

/// Deterministic per-path generator.
class PathRng {
 public:
  PathRng(std::uint64_t seed, std::uint64_t path_index);

  std::uint64_t next_u64();
  /// Uniform on the open interval (0, 1).
  double uniform();
  /// Standard normal by inversion of Φ.
  double normal();
  /// Poisson(rate) by sequential inversion.
  std::uint64_t poisson(double rate);

 private:
  std::uint64_t state_;
};

/// One draw of X_τ = γτ + σ√τ G + Σ_{j<=P} Y_j.
double sample_increment(double tau, const ModelParams& m, PathRng& rng);

/// Draw of X_τ together with its antithetic mirror (G replaced by -G, same jumps).
std::pair<double, double> sample_increment_pair(double tau, const ModelParams& m, PathRng& rng);

/// n independent draws of X_τ; draw i uses substream i.
std::vector<double> sample_increments(double tau, const ModelParams& m, std::uint64_t n,
                                      std::uint64_t seed);

/// Discounted payoff K(1 + g + max{0, Σ Z_k}) e^{-rT}.
McEstimate mc_price(const ContractTerms& terms, const ModelParams& m, const McConfig& mc);

/// min{c, e^{X_τ} - 1} - g/n.
McEstimate mc_ez1(const ContractTerms& terms, const ModelParams& m, const McConfig& mc);

/// e^{X_τ}; its mean is e^{rτ} under the risk-neutral drift.
McEstimate mc_exp_moment(double tau, const ModelParams& m, const McConfig& mc);

/// Price from simulated spot levels S_0 e^{X_t}, starting at valuation time
/// 0 so that the segment [0, t0] is drawn as well. Returns are formed as ratios
/// of levels; used to check that the spot cancels.
McEstimate mc_price_spot(const ContractTerms& terms, const ModelParams& m, const McConfig& mc,
                         double spot);

}  // namespace cliquet
