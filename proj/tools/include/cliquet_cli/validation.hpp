#pragma once

// Cross-method, Monte Carlo and identity checks on the reference parameter
// grid, one result per acceptance criterion.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cliquet/levy_model.hpp"

namespace cliquet::cli {

struct CheckResult {
  int id = 0;
  std::string name;
  bool pass = false;
  /// Worst observed value of the check statistic.
  double measured = 0.0;
  double tolerance = 0.0;
  std::string detail;
  double seconds = 0.0;
};

struct ValidationOptions {
  SeriesPolicy policy;
  std::uint64_t seed = 1;
  std::uint64_t price_paths = 1'000'000;
  std::uint64_t ez_paths = 10'000'000;
  std::uint64_t cdf_samples = 1'000'000;
  unsigned threads = 0;
};

using CheckFn = std::function<CheckResult(const ValidationOptions&)>;

struct CheckDef {
  int id;
  CheckFn run;
};

const std::vector<CheckDef>& validation_checks();

/// Runs every check in order; `on_result` sees each result as it completes.
std::vector<CheckResult> run_validation(
    const ValidationOptions& opt, const std::function<void(const CheckResult&)>& on_result = {});

/// One-line summary: "PASS  1 name: measured 1.2e-15 (tol 1e-05) [0.9 s]; detail".
std::string format_line(const CheckResult& r);

}  // namespace cliquet::cli
