#pragma once

// Run configuration: a JSON document with sections `model`, `contract`,
// `policy` and `mc`, plus command-line overrides.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cliquet/cliquet_pricing.hpp"
#include "cliquet/mc_oracle.hpp"

namespace cliquet::cli {

/// Malformed or invalid configuration; the message names the offending field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Command { Price, Greeks, Density, Cdf, Returns, Drawdown, Mc, Validate };
enum class OutputFormat { Json, Csv };

Command parse_command(const std::string& s);
std::string to_string(Command c);
OutputFormat parse_output(const std::string& s);

struct ModelConfig {
  double r = 0.03;
  double sigma = 0.2;
  double lambda = 0.0;
  JumpSpec jump = JumpSpec::normal(0.0, 0.0);
  /// Drift η; the risk-neutral value when absent.
  std::optional<double> eta;

  ModelParams build() const;
};

struct ContractConfig {
  double K = 1000.0;
  std::optional<double> T;
  double g = 0.0;
  double c = 0.0;
  int n = 1;
  double t0 = 0.0;
  std::optional<double> tau;

  /// Fills whichever of T and tau is missing from T = t0 + n tau.
  ContractTerms build() const;
};

/// Sweep of one parameter over steps + 1 equally spaced values.
struct GridSpec {
  std::string param;
  double start = 0.0;
  double stop = 0.0;
  int steps = 1;

  std::vector<double> values() const;
};

/// Parses `param=start:stop:steps`.
GridSpec parse_grid(const std::string& s);

struct RunSpec {
  Command command = Command::Price;
  ModelConfig model;
  ContractConfig contract;
  SeriesPolicy policy;
  McConfig mc;
  OutputFormat output = OutputFormat::Json;
  std::optional<GridSpec> grid;
  /// Evaluation point of density, cdf, returns and drawdown queries.
  std::optional<double> at;
  /// Time horizon of distribution queries; defaults to contract.tau.
  std::optional<double> horizon;
  /// Pricing or Greeks route: "fourier", "distribution" or "fd".
  std::string method = "fourier";
  /// Vega convention of `greeks`: "gamma_frozen" or "drift_fixed".
  std::string convention = "gamma_frozen";
  /// Set when the path count came from the config or --paths rather than
  /// the default.
  bool mc_paths_explicit = false;
};

/// Reads the config sections into `spec`. Unknown keys are rejected.
void apply_config(RunSpec& spec, const nlohmann::json& doc);

RunSpec load_config_file(const std::string& path);

/// Sets the grid parameter on a copy of the spec.
RunSpec with_param(const RunSpec& spec, const std::string& param, double value);

}  // namespace cliquet::cli
