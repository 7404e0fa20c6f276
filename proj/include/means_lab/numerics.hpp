#pragma once

// Cancellation-free building blocks shared by the means and the ratio
// functions. Everything here is generic over the floating type so the same
// code runs in double and in the 50-digit type used for near-degenerate
// margins.

#include <cmath>
#include <limits>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace means_lab {

/// 50 significant decimal digits. Used where a double margin is too close to
/// zero to carry its sign.
using extended = boost::multiprecision::cpp_bin_float_50;

namespace detail {

template <class Real>
Real epsilon_of() {
  return std::numeric_limits<Real>::epsilon();
}

template <class Real>
Real from_double(double v) {
  return static_cast<Real>(v);
}

template <class Real>
double to_double(const Real& v) {
  if constexpr (std::is_same_v<Real, double>) {
    return v;
  } else {
    return v.template convert_to<double>();
  }
}

}  // namespace detail

/// asinh(x) as log1p(u), u = x + x^2 / (1 + sqrt(1 + x^2)). Odd extension for
/// negative arguments.
template <class Real>
Real stable_asinh(const Real& x) {
  using std::abs;
  using std::log1p;
  using std::sqrt;
  const Real ax = abs(x);
  const Real sq = ax * ax;
  const Real r = log1p(ax + sq / (Real(1) + sqrt(Real(1) + sq)));
  return x < 0 ? Real(-r) : r;
}

/// log(1 + sqrt 2), the right end of the hyperbolic parameter range.
template <class Real = double>
Real log_one_plus_sqrt2() {
  return stable_asinh(Real(1));
}

/// cosh(t) - 1 = 2 sinh^2(t/2).
template <class Real>
Real cosh_minus_one(const Real& t) {
  using std::sinh;
  const Real s = sinh(t / 2);
  return 2 * s * s;
}

/// sinh(t) - t. Maclaurin tail for |t| < 1, direct difference beyond.
template <class Real>
Real sinh_minus_identity(const Real& t) {
  using std::abs;
  using std::sinh;
  if (abs(t) >= 1) {
    return sinh(t) - t;
  }
  const Real tt = t * t;
  const Real eps = detail::epsilon_of<Real>();
  Real term = t * tt / 6;  // t^3 / 3!
  Real sum = term;
  for (int k = 2; k < 200; ++k) {
    term *= tt / ((2 * k) * (2 * k + 1));
    sum += term;
    if (abs(term) <= eps * abs(sum)) break;
  }
  return sum;
}

/// x - asinh(x). Maclaurin series of asinh for |x| <= 1/2, direct beyond.
template <class Real>
Real identity_minus_asinh(const Real& x) {
  using std::abs;
  if (abs(x) > Real(0.5)) {
    return x - stable_asinh(x);
  }
  // asinh x = sum_k (-1)^k (2k)! / (4^k (k!)^2 (2k+1)) x^(2k+1)
  const Real xx = x * x;
  const Real eps = detail::epsilon_of<Real>();
  Real power = x;     // x^(2k+1)
  Real central = 1;   // (2k)! / (4^k (k!)^2)
  Real sum = 0;
  for (int k = 1; k < 400; ++k) {
    power *= xx;
    central *= Real(2 * k - 1) / Real(2 * k);
    const Real term = central * power / (2 * k + 1);
    // x - asinh x = -sum_{k>=1} (-1)^k c_k x^(2k+1)
    sum += (k % 2 == 1) ? term : Real(-term);
    if (abs(term) <= eps * abs(sum)) break;
  }
  return sum;
}

/// log(expm1(z) / z) for z != 0 without overflow at large |z|.
template <class Real>
Real log_expm1_ratio(const Real& z) {
  using std::exp;
  using std::expm1;
  using std::log;
  using std::log1p;
  if (z > 1) {
    return z + log1p(-exp(-z)) - log(z);
  }
  if (z < -1) {
    return log(-expm1(z)) - log(-z);
  }
  return log(expm1(z) / z);
}

}  // namespace means_lab
