#pragma once

// Coefficient sequences of the hyperbolic power series behind the two ratio
// functions, the monotone coefficient-ratio test, truncated quotient
// evaluation, and the root p0 of (p + 1)^(1/p) = 2 log(1 + sqrt 2).
//
//   phi_hq(t) = sum a_n t^(2n+1) / sum b_n t^(2n+1)
//   phi_hc(t) = sum c_n t^(2n+1) / sum d_n t^(2n+1)
//
//   a_n = 2n / ((2n+1) (2n)!)         b_n = (2^(2n-1) + 1) / (2n)!
//   c_n = 2^(2n) / (2n)! - 2/(2n+1)!  d_n = 2^(2n+1) / (2n)!

#include <array>
#include <cmath>
#include <cstddef>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "numerics.hpp"

namespace means_lab {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

enum class CoefficientKind { A, B, C, D };

inline std::string_view coefficient_name(CoefficientKind kind) {
  switch (kind) {
    case CoefficientKind::A: return "A";
    case CoefficientKind::B: return "B";
    case CoefficientKind::C: return "C";
    case CoefficientKind::D: return "D";
  }
  return "?";
}

/// Indices up to this bound carry an exact rational alongside the log
/// magnitude.
inline constexpr int kExactCoefficientLimit = 20;

/// A positive series coefficient: exact for small n, log magnitude always.
struct Coefficient {
  int n = 0;
  std::optional<Rational> exact;
  double log_magnitude = 0.0;

  double value() const {
    if (exact) return exact->convert_to<double>();
    return std::exp(log_magnitude);
  }
};

enum class Monotonicity { StrictlyIncreasing, StrictlyDecreasing, NotMonotone };

inline std::string_view monotonicity_name(Monotonicity m) {
  switch (m) {
    case Monotonicity::StrictlyIncreasing: return "StrictlyIncreasing";
    case Monotonicity::StrictlyDecreasing: return "StrictlyDecreasing";
    case Monotonicity::NotMonotone: return "NotMonotone";
  }
  return "?";
}

struct MonotonicityVerdict {
  Monotonicity direction = Monotonicity::NotMonotone;
  int checked_up_to = 0;
  /// n such that r_(n+1) - r_n breaks strict monotonicity.
  std::optional<int> first_violation;
};

namespace detail {

inline void require_index(int n) {
  if (n < 1) throw std::domain_error("coefficient index must be >= 1");
}

inline BigInt factorial(int m) {
  BigInt f = 1;
  for (int k = 2; k <= m; ++k) f *= k;
  return f;
}

inline BigInt power_of_two(int e) {
  BigInt r = 1;
  r <<= e;
  return r;
}

}  // namespace detail

/// Exact value of the n-th coefficient, any n >= 1.
inline Rational exact_coefficient(CoefficientKind kind, int n) {
  detail::require_index(n);
  const BigInt f2n = detail::factorial(2 * n);
  switch (kind) {
    case CoefficientKind::A:
      return Rational(BigInt(2 * n), BigInt(2 * n + 1) * f2n);
    case CoefficientKind::B:
      return Rational(detail::power_of_two(2 * n - 1) + 1, f2n);
    case CoefficientKind::C:
      return Rational(detail::power_of_two(2 * n), f2n) - Rational(BigInt(2), f2n * (2 * n + 1));
    case CoefficientKind::D:
      return Rational(detail::power_of_two(2 * n + 1), f2n);
  }
  throw std::logic_error("unknown coefficient kind");
}

/// log of the n-th coefficient in double, factorials through lgamma.
inline double log_coefficient(CoefficientKind kind, int n) {
  detail::require_index(n);
  const double two_n = 2.0 * n;
  const double log_f2n = std::lgamma(two_n + 1.0);
  const double ln2 = std::log(2.0);
  switch (kind) {
    case CoefficientKind::A:
      return std::log(two_n) - std::log(two_n + 1.0) - log_f2n;
    case CoefficientKind::B:
      // 2^(2n-1) + 1 = 2^(2n-1) (1 + 2^(1-2n))
      return (two_n - 1.0) * ln2 + std::log1p(std::ldexp(1.0, 1 - 2 * n)) - log_f2n;
    case CoefficientKind::C:
      // (2^(2n) (2n+1) - 2) / (2n+1)!
      return two_n * ln2 + std::log(two_n + 1.0) +
             std::log1p(-2.0 * std::ldexp(1.0, -2 * n) / (two_n + 1.0)) -
             std::lgamma(two_n + 2.0);
    case CoefficientKind::D:
      return (two_n + 1.0) * ln2 - log_f2n;
  }
  throw std::logic_error("unknown coefficient kind");
}

inline Coefficient coefficient(CoefficientKind kind, int n) {
  Coefficient c;
  c.n = n;
  c.log_magnitude = log_coefficient(kind, n);
  if (n <= kExactCoefficientLimit) c.exact = exact_coefficient(kind, n);
  return c;
}

/// Monotonicity of r_n = num_n / den_n over the given prefix, decided in
/// exact arithmetic. Every den_n must be positive.
inline MonotonicityVerdict ratio_sequence_verdict(std::span<const Rational> numerators,
                                                  std::span<const Rational> denominators) {
  if (numerators.size() != denominators.size()) {
    throw std::invalid_argument("numerator and denominator sequences differ in length");
  }
  if (numerators.size() < 2) {
    throw std::domain_error("need at least two terms to compare ratios");
  }
  MonotonicityVerdict verdict;
  verdict.checked_up_to = static_cast<int>(numerators.size());
  std::optional<int> sign;
  Rational previous;
  for (std::size_t i = 0; i < numerators.size(); ++i) {
    if (denominators[i] <= 0) {
      throw std::domain_error("denominator coefficients must be positive");
    }
    const Rational ratio = numerators[i] / denominators[i];
    if (i > 0) {
      const int s = (ratio > previous) - (ratio < previous);
      if (!sign) sign = s;
      if (s == 0 || s != *sign) {
        verdict.direction = Monotonicity::NotMonotone;
        verdict.first_violation = static_cast<int>(i);  // compares r_i with r_(i+1), 1-based
        return verdict;
      }
    }
    previous = ratio;
  }
  verdict.direction = *sign > 0 ? Monotonicity::StrictlyIncreasing : Monotonicity::StrictlyDecreasing;
  return verdict;
}

/// Monotonicity of the coefficient ratios n = 1..terms for two named series.
inline MonotonicityVerdict ratio_sequence_verdict(CoefficientKind numerator,
                                                  CoefficientKind denominator, int terms) {
  if (terms < 2) throw std::domain_error("need at least two terms to compare ratios");
  std::vector<Rational> num, den;
  num.reserve(terms);
  den.reserve(terms);
  for (int n = 1; n <= terms; ++n) {
    num.push_back(exact_coefficient(numerator, n));
    den.push_back(exact_coefficient(denominator, n));
  }
  return ratio_sequence_verdict(num, den);
}

/// Exact coefficient ratio r_n = num_n / den_n.
inline Rational coefficient_ratio(CoefficientKind numerator, CoefficientKind denominator, int n) {
  return exact_coefficient(numerator, n) / exact_coefficient(denominator, n);
}

/// Closed form of a_(n+1)/b_(n+1) - a_n/b_n:
/// (2 + (2 - 18n - 12n^2) 2^(2n-1)) / ((2n+1)(2n+3)(2^(2n-1)+1)(2^(2n+1)+1)).
inline Rational hq_ratio_step_closed_form(int n) {
  detail::require_index(n);
  const BigInt nn = n;
  const BigInt p = detail::power_of_two(2 * n - 1);
  const BigInt q = detail::power_of_two(2 * n + 1);
  const BigInt top = 2 + (2 - 18 * nn - 12 * nn * nn) * p;
  const BigInt bottom = (2 * nn + 1) * (2 * nn + 3) * (p + 1) * (q + 1);
  return Rational(top, bottom);
}

/// Closed form of c_n / d_n = 1/2 - 1/((2n+1) 2^(2n)).
inline Rational hc_ratio_closed_form(int n) {
  detail::require_index(n);
  return Rational(1, 2) - Rational(BigInt(1), BigInt(2 * n + 1) * detail::power_of_two(2 * n));
}

namespace detail {

inline constexpr int kCoefficientTableSize = 120;

/// Double-precision coefficient tables, built once.
inline const std::array<std::array<double, kCoefficientTableSize>, 4>& coefficient_tables() {
  static const auto tables = [] {
    std::array<std::array<double, kCoefficientTableSize>, 4> t{};
    for (int k = 0; k < 4; ++k) {
      for (int n = 1; n <= kCoefficientTableSize; ++n) {
        t[k][n - 1] = coefficient(static_cast<CoefficientKind>(k), n).value();
      }
    }
    return t;
  }();
  return tables;
}

template <class Real>
Real coefficient_as(CoefficientKind kind, int n) {
  if constexpr (std::is_same_v<Real, double>) {
    if (n <= kCoefficientTableSize) return coefficient_tables()[static_cast<int>(kind)][n - 1];
    return std::exp(log_coefficient(kind, n));
  } else {
    const Rational q = exact_coefficient(kind, n);
    return Real(boost::multiprecision::numerator(q)) / Real(boost::multiprecision::denominator(q));
  }
}

}  // namespace detail

/// (sum_{n<=terms} num_n t^(2n+1)) / (sum_{n<=terms} den_n t^(2n+1)).
/// The common factor t^3 is divided out, so t = 0 returns num_1 / den_1.
template <class Real = double>
Real truncated_quotient(CoefficientKind numerator, CoefficientKind denominator, const Real& t,
                        int terms) {
  using std::abs;
  if (!(abs(t) < Real(1.5))) throw std::domain_error("series argument must satisfy |t| < 1.5");
  if (terms < 1) throw std::domain_error("need at least one series term");
  const Real tt = t * t;
  Real num = 0;
  Real den = 0;
  for (int n = terms; n >= 1; --n) {
    num = num * tt + detail::coefficient_as<Real>(numerator, n);
    den = den * tt + detail::coefficient_as<Real>(denominator, n);
  }
  if (den == 0) throw std::range_error("denominator series vanished");
  return num / den;
}

/// (p + 1)^(1/p) - 2 log(1 + sqrt 2).
template <class Real = double>
Real p0_residual(const Real& p) {
  using std::log1p;
  using std::exp;
  return exp(log1p(p) / p) - 2 * log_one_plus_sqrt2<Real>();
}

/// Bisection for p0 on [1, 3]. Returns p with |residual(p)| < tolerance.
template <class Real = double>
Real solve_p0(const Real& tolerance) {
  using std::abs;
  if (!(tolerance > 0)) throw std::domain_error("tolerance must be positive");
  Real lo = 1;
  Real hi = 3;
  const Real f_lo = p0_residual(lo);
  const Real f_hi = p0_residual(hi);
  if (!(f_lo > 0 && f_hi < 0)) {
    throw std::logic_error("p0 bracket [1, 3] does not straddle the root");
  }
  for (int iter = 0; iter < 4000; ++iter) {
    const Real mid = (lo + hi) / 2;
    const Real f = p0_residual(mid);
    if (abs(f) < tolerance) return mid;
    if (mid == lo || mid == hi) break;
    (f > 0 ? lo : hi) = mid;
  }
  throw std::runtime_error("p0 residual tolerance is below the attainable precision");
}

}  // namespace means_lab
