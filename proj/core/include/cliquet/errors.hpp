#pragma once

#include <stdexcept>
#include <string>

namespace cliquet {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter violates its documented domain (sigma <= 0, xi <= -1, ...).
class InvalidParam : public Error {
 public:
  using Error::Error;
};

/// Contract terms are inconsistent (reset grid beyond maturity, t0 = 0, ...).
class InvalidContract : public Error {
 public:
  using Error::Error;
};

/// E[e^{Y}] is infinite for the jump law (exponential jumps with alpha <= 1).
class DivergentExponentialMoment : public Error {
 public:
  using Error::Error;
};

/// The requested representation needs normally distributed jump sizes.
class UnsupportedJumpLaw : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature could not reach its tolerance within the panel budget.
class QuadratureFailure : public Error {
 public:
  using Error::Error;
};

/// A series or continued fraction needs more terms than its budget allows.
class TruncationBudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// A computed quantity broke a bound that holds by construction.
class InternalInvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace cliquet
