#pragma once

#include <cmath>

#include "cliquet/cliquet_pricing.hpp"
#include "cliquet/levy_model.hpp"

namespace fixtures {

inline cliquet::ModelParams reference_model(double sigma = 0.2, double lambda = 0.5) {
  return cliquet::risk_neutral_drift(0.03, sigma, lambda, cliquet::JumpSpec::normal(-0.1, 0.15));
}

/// n monthly periods starting one month out, cap 1%.
inline cliquet::ContractTerms monthly(double g = 0.0, int n = 12, double c = 0.01) {
  return cliquet::ContractTerms::equidistant(1000.0, (1.0 + n) / 12.0, g, c, n, 1.0 / 12.0);
}

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace fixtures
