#pragma once

/**
 * @file ratio_functions.hpp
 * @brief Ratio functions whose ranges are the sharp weights, the auxiliary
 * sign functions behind the G/Q bound, and the named sharp constants.
 *
 * With x = |a - b| / (a + b) and t = asinh(x), every mean divided by A(a,b)
 * is a function of t alone:
 *
 *   M/A = sinh t / t,  H/A = 1 - sinh^2 t,  Q/A = cosh t,  C/A = 1 + sinh^2 t,
 *   G/A = sqrt(1 - x^2).
 *
 * The three ratios
 *
 *   phi_hq(t) = (Q - M) / (Q - H),  phi_hc(t) = (C - M) / (C - H),
 *   ratio_gq(x) = (Q - M) / (Q - G)
 *
 * are monotone on their domains, so their endpoint limits are the extremal
 * weights of the corresponding convex-combination bounds.
 */

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <type_traits>
#include <utility>

#include "numerics.hpp"
#include "series.hpp"

namespace means_lab {

template <class Real>
struct BasicSharpConstants {
  Real alpha1;   // H/Q lower-bound weight, 2/9
  Real beta1;    // H/Q upper-bound weight, lambda0
  Real alpha2;   // G/Q lower-bound weight, 1/3
  Real beta2;    // G/Q upper-bound weight, lambda0
  Real alpha3;   // H/C lower-bound weight, 1 - 1/(2 log(1 + sqrt 2))
  Real beta3;    // H/C upper-bound weight, 5/12
  Real lambda0;  // 1 - 1/(sqrt 2 log(1 + sqrt 2))
  Real p0;       // root of (p + 1)^(1/p) = 2 log(1 + sqrt 2)
};

using SharpConstants = BasicSharpConstants<double>;

template <class Real = double>
const BasicSharpConstants<Real>& sharp_constants();

/// All constants computed from log(1 + sqrt 2), once per type. The double
/// set is rounded from the extended one: 1 - 1/(sqrt 2 log(1 + sqrt 2))
/// cancels a few bits when evaluated in double.
template <class Real>
const BasicSharpConstants<Real>& sharp_constants() {
  static const BasicSharpConstants<Real> k = [] {
    if constexpr (std::is_same_v<Real, double>) {
      const auto& e = sharp_constants<extended>();
      const auto d = [](const extended& v) { return detail::to_double(v); };
      return BasicSharpConstants<double>{d(e.alpha1), d(e.beta1),  d(e.alpha2),  d(e.beta2),
                                         d(e.alpha3), d(e.beta3), d(e.lambda0), d(e.p0)};
    }
    using std::sqrt;
    const Real ell = log_one_plus_sqrt2<Real>();
    const Real lambda0 = 1 - 1 / (sqrt(Real(2)) * ell);
    BasicSharpConstants<Real> c{};
    c.alpha1 = Real(2) / 9;
    c.beta1 = lambda0;
    c.alpha2 = Real(1) / 3;
    c.beta2 = lambda0;
    c.alpha3 = 1 - 1 / (2 * ell);
    c.beta3 = Real(5) / 12;
    c.lambda0 = lambda0;
    c.p0 = solve_p0<Real>(Real(16) * detail::epsilon_of<Real>());
    return c;
  }();
  return k;
}

enum class RatioFunctionKind { PhiHQ, PhiHC, RatioGQ };
enum class Endpoint { Lower, Upper };

inline std::string_view ratio_function_name(RatioFunctionKind kind) {
  switch (kind) {
    case RatioFunctionKind::PhiHQ: return "PhiHQ";
    case RatioFunctionKind::PhiHC: return "PhiHC";
    case RatioFunctionKind::RatioGQ: return "RatioGQ";
  }
  return "?";
}

/// Open domain (lower, upper) of the ratio function's argument; t for the two
/// phi functions, x for ratio_gq.
template <class Real = double>
std::pair<Real, Real> ratio_domain(RatioFunctionKind kind) {
  if (kind == RatioFunctionKind::RatioGQ) return {Real(0), Real(1)};
  return {Real(0), log_one_plus_sqrt2<Real>()};
}

/// Closed-form endpoint limits.
template <class Real = double>
Real limit_at(RatioFunctionKind kind, Endpoint end) {
  const auto& k = sharp_constants<Real>();
  switch (kind) {
    case RatioFunctionKind::PhiHQ: return end == Endpoint::Lower ? k.alpha1 : k.lambda0;
    case RatioFunctionKind::PhiHC: return end == Endpoint::Lower ? k.beta3 : k.alpha3;
    case RatioFunctionKind::RatioGQ: return end == Endpoint::Lower ? k.alpha2 : k.lambda0;
  }
  throw std::logic_error("unknown ratio function");
}

namespace detail {

/// Below this argument the phi quotients come from their power series.
inline constexpr double kSeriesThreshold = 1e-3;
/// t^(2 terms) < 1e-36 at the threshold.
inline constexpr int kSmallArgumentTerms = 8;

template <class Real>
int small_argument_terms() {
  if constexpr (std::is_same_v<Real, double>) {
    return kSmallArgumentTerms;
  } else {
    return 2 + std::numeric_limits<Real>::digits10 / 6;
  }
}

}  // namespace detail

/// (t cosh t - sinh t) / (t (cosh(2t)/2 + cosh t - 3/2)) on 0 < t < log(1 + sqrt 2).
/// Strictly decreasing from 2/9 to lambda0.
template <class Real = double>
Real phi_hq(const Real& t) {
  if (!(t > 0 && t < log_one_plus_sqrt2<Real>())) {
    throw std::domain_error("phi_hq: t must lie in (0, log(1 + sqrt 2))");
  }
  if (t < Real(detail::kSeriesThreshold)) {
    return truncated_quotient<Real>(CoefficientKind::A, CoefficientKind::B, t,
                                    detail::small_argument_terms<Real>());
  }
  // t cosh t - sinh t = t (cosh t - 1) - (sinh t - t)
  // cosh(2t)/2 + cosh t - 3/2 = (cosh 2t - 1)/2 + (cosh t - 1)
  const Real num = t * cosh_minus_one(t) - sinh_minus_identity(t);
  const Real den = t * (cosh_minus_one(Real(2 * t)) / 2 + cosh_minus_one(t));
  return num / den;
}

/// (t (cosh 2t + 1) - 2 sinh t) / (2t (cosh 2t - 1)) for 0 < |t| < log(1 + sqrt 2).
/// Even; strictly increasing in |t| from 5/12 to alpha3.
template <class Real = double>
Real phi_hc(const Real& t) {
  using std::abs;
  const Real at = abs(t);
  if (!(at > 0 && at < log_one_plus_sqrt2<Real>())) {
    throw std::domain_error("phi_hc: |t| must lie in (0, log(1 + sqrt 2))");
  }
  if (at < Real(detail::kSeriesThreshold)) {
    return truncated_quotient<Real>(CoefficientKind::C, CoefficientKind::D, at,
                                    detail::small_argument_terms<Real>());
  }
  // t (cosh 2t + 1) - 2 sinh t = t (cosh 2t - 1) - 2 (sinh t - t)
  const Real c2 = cosh_minus_one(Real(2 * at));
  const Real num = at * c2 - 2 * sinh_minus_identity(at);
  const Real den = 2 * at * c2;
  return num / den;
}

/// (sqrt(1+x^2) asinh x - x) / ((sqrt(1+x^2) - sqrt(1-x^2)) asinh x) on 0 < x < 1.
/// Decreasing from 1/3 to lambda0.
template <class Real = double>
Real ratio_gq(const Real& x) {
  using std::sqrt;
  if (!(x > 0 && x < 1)) throw std::domain_error("ratio_gq: x must lie in (0, 1)");
  const Real xx = x * x;
  const Real up = sqrt(1 + xx);
  const Real down = sqrt(1 - xx);
  const Real t = stable_asinh(x);
  // sqrt(1+x^2) t - x = t (sqrt(1+x^2) - 1) - (x - t)
  const Real num = t * (xx / (up + 1)) - identity_minus_asinh(x);
  // sqrt(1+x^2) - sqrt(1-x^2) = 2x^2 / (sqrt(1+x^2) + sqrt(1-x^2))
  const Real den = t * (2 * xx / (up + down));
  return num / den;
}

template <class Real = double>
Real evaluate_ratio(RatioFunctionKind kind, const Real& arg) {
  switch (kind) {
    case RatioFunctionKind::PhiHQ: return phi_hq(arg);
    case RatioFunctionKind::PhiHC: return phi_hc(arg);
    case RatioFunctionKind::RatioGQ: return ratio_gq(arg);
  }
  throw std::logic_error("unknown ratio function");
}

// Auxiliary functions of the G/Q sign argument. Throughout
// s_plus = sqrt(1 + x^2) and s_minus = sqrt(1 - x^2).

namespace detail {

inline void require_weight_in_open_unit(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("p must lie in (0, 1)");
}

inline void require_closed_unit(double x, double hi = 1.0) {
  if (!(x >= 0.0 && x <= hi)) throw std::domain_error("x outside the closed domain");
}

}  // namespace detail

/// asinh x - x / (s_plus - p (s_plus - s_minus)). Zero at x = 0; its sign
/// equals the sign of p G + (1 - p) Q - M.
inline double f_p(double p, double x) {
  detail::require_weight_in_open_unit(p);
  detail::require_closed_unit(x);
  if (x == 0.0) return 0.0;
  const double xx = x * x;
  const double sp = std::sqrt(1 + xx);
  const double sm = std::sqrt(1 - xx);
  const double den = sp - p * (sp - sm);
  if (!(den > 0.0)) throw std::logic_error("f_p denominator must be positive");
  // (t den - x) / den with t = asinh x, den - 1 = x^2 (1/(s_plus+1) - 2p/(s_plus+s_minus));
  // f_(1/3) vanishes to fifth order at 0, the plain difference cannot resolve it
  const double t = stable_asinh(x);
  const double num = t * xx * (1.0 / (sp + 1.0) - 2.0 * p / (sp + sm)) - identity_minus_asinh(x);
  return num / den;
}

/// s_minus (s_plus + p (s_minus - s_plus))^2 - s_minus - p (s_plus - s_minus).
inline double g_p(double p, double x) {
  detail::require_weight_in_open_unit(p);
  detail::require_closed_unit(x);
  const double sp = std::sqrt(1 + x * x);
  const double sm = std::sqrt(1 - x * x);
  const double inner = sp + p * (sm - sp);
  return sm * inner * inner - sm - p * (sp - sm);
}

/// 14 / (9 (s_plus + s_minus)) - (s_plus + s_minus) - s_minus / 3.
inline double h_onethird(double x) {
  detail::require_closed_unit(x);
  const double sp = std::sqrt(1 + x * x);
  const double sm = std::sqrt(1 - x * x);
  const double s = sp + sm;
  return 14.0 / (9.0 * s) - s - sm / 3.0;
}

/// [(2 - 3L - 2L^2) - (3 - 6L) x^2] s_plus - [(3L - 2L^2) + (6L - 6L^2) x^2] s_minus,
/// L = lambda0. Positive then negative on (0, 1).
inline double h_lambda0(double x) {
  detail::require_closed_unit(x);
  const double l = sharp_constants<double>().lambda0;
  const double xx = x * x;
  const double sp = std::sqrt(1 + xx);
  const double sm = std::sqrt(1 - xx);
  return ((2 - 3 * l - 2 * l * l) - (3 - 6 * l) * xx) * sp -
         ((3 * l - 2 * l * l) + (6 * l - 6 * l * l) * xx) * sm;
}

/// The two bracketed polynomials of mu_lambda0 at x.
struct MuBrackets {
  double first;   // (18L - 18L^2) x^2 - (9L - 10L^2)
  double second;  // (9 - 18L) x^2 + (4 - 9L + 2L^2)
};

inline MuBrackets mu_lambda0_brackets(double x) {
  const double l = sharp_constants<double>().lambda0;
  const double xx = x * x;
  return {(18 * l - 18 * l * l) * xx - (9 * l - 10 * l * l),
          (9 - 18 * l) * xx + (4 - 9 * l + 2 * l * l)};
}

/// first(x) s_plus - second(x) s_minus. Negative on (0, 0.9].
inline double mu_lambda0(double x) {
  detail::require_closed_unit(x, 0.9);
  const auto br = mu_lambda0_brackets(x);
  return br.first * std::sqrt(1 + x * x) - br.second * std::sqrt(1 - x * x);
}

/// Upper bound of mu_lambda0 on [1/2, 0.9]: the first bracket is largest at
/// 0.9 and the second smallest at 1/2.
struct MuUpperBound {
  double first_at_09;     // 5.58 L - 4.58 L^2
  double second_at_half;  // 6.25 - 13.5 L + 2 L^2
  double bound;           // first_at_09 sqrt(1.81) - second_at_half sqrt(0.19)
};

inline MuUpperBound mu_lambda0_upper_bound() {
  MuUpperBound r;
  r.first_at_09 = mu_lambda0_brackets(0.9).first;
  r.second_at_half = mu_lambda0_brackets(0.5).second;
  r.bound = r.first_at_09 * std::sqrt(1 + 0.81) - r.second_at_half * std::sqrt(1 - 0.81);
  return r;
}

struct SignChange {
  double location = 0.0;
  std::size_t sign_changes = 0;  // on the scan grid
};

/// Locates the sign change of h_lambda0 on (0, 1): a uniform scan of
/// `scan_points` points isolates the bracket, bisection refines to `tolerance`.
inline SignChange locate_h_lambda0_sign_change(std::size_t scan_points = 10000,
                                               double tolerance = 1e-12) {
  if (scan_points < 2) throw std::domain_error("scan needs at least two points");
  SignChange result;
  std::optional<std::pair<double, double>> bracket;
  double prev_x = 0.0;
  double prev_v = h_lambda0(prev_x);
  for (std::size_t i = 1; i < scan_points; ++i) {
    const double x = static_cast<double>(i) / static_cast<double>(scan_points);
    const double v = h_lambda0(x);
    if ((prev_v > 0) != (v > 0)) {
      ++result.sign_changes;
      if (!bracket) bracket = {prev_x, x};
    }
    prev_x = x;
    prev_v = v;
  }
  if (!bracket) throw std::runtime_error("h_lambda0 has no sign change on the scan grid");
  auto [lo, hi] = *bracket;
  while (hi - lo > tolerance) {
    const double mid = 0.5 * (lo + hi);
    (h_lambda0(mid) > 0 ? lo : hi) = mid;
  }
  result.location = 0.5 * (lo + hi);
  return result;
}

}  // namespace means_lab
