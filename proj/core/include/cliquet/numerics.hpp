#pragma once

// Shared numeric kernels: normal distribution functions, truncated Poisson
// weights and adaptive Gauss-Kronrod quadrature on finite and semi-infinite
// ranges. All functions are pure.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <queue>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "cliquet/errors.hpp"

namespace cliquet {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

/// Standard normal distribution function, via erfc so both tails keep full
/// relative precision.
double normal_cdf(double x);

/// Standard normal density.
double normal_pdf(double x);

/// Inverse of normal_cdf on (0, 1).
double normal_quantile(double p);

/// Poisson probabilities e^{-rate} rate^m / m! for m = 0..M, with M the first
/// index at which the cumulative mass reaches 1 - eps.
/// Throws TruncationBudgetExceeded when more than max_terms weights are needed.
std::vector<double> poisson_weights(double rate, double eps, int max_terms);

/// Exact value of the oscillatory tail integral ∫_x^∞ e^{iωt} t^{-2} dt, x > 0.
Complex inverse_square_fourier_tail(double omega, double x);

/// Generalised exponential integral E_k(z) = ∫_1^∞ e^{-zt} t^{-k} dt for
/// k >= 1 and complex z off the negative real axis.
Complex exponential_integral_en(int k, Complex z);

/// ∫_x^∞ e^{iωt} t^{-k} dt for k >= 2, x > 0.
Complex power_fourier_tail(int k, double omega, double x);

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

template <class T>
struct QuadResult {
  T value{};
  double abs_error_estimate = 0.0;
  int panels_used = 0;
  /// Bound on the part of a semi-infinite range that was not integrated
  /// numerically (zero for finite ranges).
  double tail_bound = 0.0;
};

struct QuadOptions {
  /// Absolute tolerance on the summed panel error estimates.
  double tol = 1e-9;
  int max_panels = 20000;
  /// Initial panels are no wider than this; set it to the local wavelength of
  /// an oscillatory integrand. Zero disables pre-splitting.
  double max_panel_width = 0.0;
};

namespace detail {

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const Complex& v) { return std::abs(v); }
template <std::size_t N>
double magnitude(const std::array<Complex, N>& v) {
  double m = 0.0;
  for (const auto& c : v) m = std::max(m, std::abs(c));
  return m;
}

template <class T>
T add(const T& a, const T& b) {
  if constexpr (std::is_arithmetic_v<T> || std::is_same_v<T, Complex>) {
    return a + b;
  } else {
    T out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
    return out;
  }
}

template <class T>
T sub(const T& a, const T& b) {
  if constexpr (std::is_arithmetic_v<T> || std::is_same_v<T, Complex>) {
    return a - b;
  } else {
    T out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= b[i];
    return out;
  }
}

template <class T>
T scale(const T& a, double s) {
  if constexpr (std::is_arithmetic_v<T> || std::is_same_v<T, Complex>) {
    return a * s;
  } else {
    T out = a;
    for (auto& x : out) x *= s;
    return out;
  }
}

// 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
inline constexpr std::array<double, 11> kKronrodNodes = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
inline constexpr std::array<double, 11> kKronrodWeights = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600217805700, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
// Gauss weights for the odd Kronrod nodes 1, 3, 5, 7, 9.
inline constexpr std::array<double, 5> kGaussWeights = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651146};

template <class T>
struct Panel {
  double a = 0.0;
  double b = 0.0;
  T value{};
  double error = 0.0;
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <class T, class F>
Panel<T> gauss_kronrod_21(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  std::array<T, 21> fv;
  for (int j = 0; j < 10; ++j) {
    const double dx = half * kKronrodNodes[j];
    fv[2 * j] = f(center - dx);
    fv[2 * j + 1] = f(center + dx);
  }
  fv[20] = f(center);

  T kronrod = scale(fv[20], kKronrodWeights[10]);
  T gauss = scale(fv[20], 0.0);
  double res_abs = kKronrodWeights[10] * magnitude(fv[20]);
  for (int j = 0; j < 10; ++j) {
    const T pair = add(fv[2 * j], fv[2 * j + 1]);
    kronrod = add(kronrod, scale(pair, kKronrodWeights[j]));
    res_abs += kKronrodWeights[j] * (magnitude(fv[2 * j]) + magnitude(fv[2 * j + 1]));
    if (j % 2 == 1) gauss = add(gauss, scale(pair, kGaussWeights[j / 2]));
  }
  const T mean = scale(kronrod, 0.5);
  double res_asc = kKronrodWeights[10] * magnitude(sub(fv[20], mean));
  for (int j = 0; j < 10; ++j) {
    res_asc += kKronrodWeights[j] *
               (magnitude(sub(fv[2 * j], mean)) + magnitude(sub(fv[2 * j + 1], mean)));
  }

  const double h = std::abs(half);
  double err = magnitude(sub(kronrod, gauss)) * h;
  res_abs *= h;
  res_asc *= h;
  if (res_asc != 0.0 && err != 0.0) {
    err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
  }
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (res_abs > std::numeric_limits<double>::min() / (50.0 * eps)) {
    err = std::max(50.0 * eps * res_abs, err);
  }
  return Panel<T>{a, b, scale(kronrod, half), err};
}

template <class F>
using quad_value_t = std::decay_t<std::invoke_result_t<F&, double>>;

}  // namespace detail

/// Globally adaptive 21-point Gauss-Kronrod quadrature over the union of the
/// intervals [breaks[i], breaks[i+1]]. The panel with the largest error
/// estimate is bisected until the summed estimate is below opt.tol.
template <class F>
QuadResult<detail::quad_value_t<F>> integrate_breakpoints(F&& f, std::span<const double> breaks,
                                                          const QuadOptions& opt) {
  using T = detail::quad_value_t<F>;
  using detail::Panel;
  if (breaks.size() < 2) throw InvalidParam("integrate: need at least two breakpoints");
  if (!(opt.tol > 0.0)) throw InvalidParam("integrate: tolerance must be positive");

  std::priority_queue<Panel<T>> heap;
  auto push_range = [&](double a, double b) {
    int pieces = 1;
    if (opt.max_panel_width > 0.0) {
      pieces = static_cast<int>(std::ceil((b - a) / opt.max_panel_width));
      pieces = std::clamp(pieces, 1, std::max(1, opt.max_panels / 2));
    }
    const double w = (b - a) / pieces;
    for (int k = 0; k < pieces; ++k) {
      const double lo = a + k * w;
      const double hi = (k + 1 == pieces) ? b : a + (k + 1) * w;
      heap.push(detail::gauss_kronrod_21<T>(f, lo, hi));
    }
  };
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (!(breaks[i] < breaks[i + 1])) {
      throw InvalidParam("integrate: breakpoints must be strictly increasing");
    }
    push_range(breaks[i], breaks[i + 1]);
  }

  auto totals = [&heap]() {
    // Summation in heap order is deterministic for identical inputs.
    auto copy = heap;
    T sum{};
    bool first = true;
    double err = 0.0;
    while (!copy.empty()) {
      const auto& p = copy.top();
      sum = first ? p.value : detail::add(sum, p.value);
      first = false;
      err += p.error;
      copy.pop();
    }
    return std::pair<T, double>{sum, err};
  };

  double err_sum = 0.0;
  {
    auto copy = heap;
    while (!copy.empty()) {
      err_sum += copy.top().error;
      copy.pop();
    }
  }

  while (err_sum > opt.tol) {
    if (static_cast<int>(heap.size()) >= opt.max_panels) {
      throw QuadratureFailure("integrate: panel budget of " + std::to_string(opt.max_panels) +
                              " exhausted with error estimate " + std::to_string(err_sum) +
                              " > tol " + std::to_string(opt.tol));
    }
    Panel<T> worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      throw QuadratureFailure("integrate: panel width underflow near " + std::to_string(mid));
    }
    auto left = detail::gauss_kronrod_21<T>(f, worst.a, mid);
    auto right = detail::gauss_kronrod_21<T>(f, mid, worst.b);
    err_sum += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }

  auto [value, err] = totals();
  return QuadResult<T>{value, err, static_cast<int>(heap.size()), 0.0};
}

/// Adaptive quadrature of f over [a, b].
template <class F>
QuadResult<detail::quad_value_t<F>> integrate_finite(F&& f, double a, double b,
                                                     const QuadOptions& opt = {}) {
  if (!(a < b)) throw InvalidParam("integrate_finite: requires a < b");
  const std::array<double, 2> breaks{a, b};
  return integrate_breakpoints(std::forward<F>(f), breaks, opt);
}

/// Asymptotic model of ∫_X^∞ f(x) dx supplied by a caller that knows the
/// large-x behaviour of its integrand.
struct TailEstimate {
  double value = 0.0;
  double bound = 0.0;  // bound on |true tail - value|
};

struct SemiInfiniteOptions {
  double tol = 1e-9;
  /// f is evaluated at the head point and its finite limit at 0+ is assumed;
  /// ∫_0^head f is taken as head * f(head).
  double head = 1e-8;
  /// Upper end X of the numerical range. Zero selects X = 2C/tol from the
  /// tail constant.
  double cutoff = 0.0;
  /// |f(x)| <= tail_constant / x^2 for x >= X.
  double tail_constant = 2.0;
  /// Optional asymptotic tail model. When absent the tail is bounded by C/X
  /// and contributes nothing to the value.
  std::function<TailEstimate(double)> tail;
  double max_panel_width = 0.0;
  int max_panels = 50000;
};

/// Integrates a real integrand with a removable singularity at 0 and an
/// O(1/x^2) tail over (0, ∞).
QuadResult<double> integrate_semi_infinite(const std::function<double(double)>& f,
                                           const SemiInfiniteOptions& opt);

}  // namespace cliquet
