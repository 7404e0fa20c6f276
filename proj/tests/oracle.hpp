#pragma once

// Reference values for the tests: the textbook formulas evaluated naively in
// 50-digit decimal floating point. Deliberately a different backend from the
// library's extended type and with none of its cancellation-avoiding rewrites.

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_dec_float.hpp>

#include "means_lab/means.hpp"

namespace oracle {

using Dec = boost::multiprecision::cpp_dec_float_50;

inline Dec naive_asinh(const Dec& x) { return log(x + sqrt(1 + x * x)); }

/// L_p(a, b) straight from the definition, a != b.
inline Dec generalized_log(const Dec& p, const Dec& a, const Dec& b) {
  if (abs(p + 1) < Dec("1e-8")) return (b - a) / (log(b) - log(a));
  if (abs(p) < Dec("1e-8")) {
    return exp((b * log(b) - a * log(a)) / (b - a) - 1);
  }
  return pow((pow(b, p + 1) - pow(a, p + 1)) / ((p + 1) * (b - a)), 1 / p);
}

/// Mean of (a, b) with a != b.
inline Dec mean(const means_lab::MeanKind& kind, const Dec& a, const Dec& b) {
  using F = means_lab::MeanKind::Family;
  const Dec pi = boost::math::constants::pi<Dec>();
  switch (kind.family) {
    case F::Harmonic: return 2 * a * b / (a + b);
    case F::Geometric: return sqrt(a * b);
    case F::Logarithmic: return (a - b) / (log(a) - log(b));
    case F::SeiffertFirst: return (a - b) / (4 * atan(sqrt(a / b)) - pi);
    case F::Arithmetic: return (a + b) / 2;
    case F::NeumanSandor: return (a - b) / (2 * naive_asinh((a - b) / (a + b)));
    case F::SeiffertSecond: return (a - b) / (2 * atan((a - b) / (a + b)));
    case F::Quadratic: return sqrt((a * a + b * b) / 2);
    case F::ContraHarmonic: return (a * a + b * b) / (a + b);
    case F::GeneralizedLog: return generalized_log(Dec(kind.p), a, b);
  }
  return 0;
}

inline double mean(const means_lab::MeanKind& kind, double a, double b) {
  if (a == b) return a;
  return mean(kind, Dec(a), Dec(b)).convert_to<double>();
}

inline Dec ell() { return log(1 + sqrt(Dec(2))); }
inline Dec lambda0() { return 1 - 1 / (sqrt(Dec(2)) * ell()); }

inline double relative_error(double value, const Dec& reference) {
  return abs((Dec(value) - reference) / reference).convert_to<double>();
}

inline double relative_error(double value, double reference) {
  return relative_error(value, Dec(reference));
}

}  // namespace oracle
