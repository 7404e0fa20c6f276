#pragma once

/**
 * @file means.hpp
 * @brief The ten bivariate means over positive pairs.
 *
 * Every mean is evaluated from a canonical (larger, smaller) ordering of the
 * pair, so swapping the arguments yields a bit-identical result. The means
 * defined through a 0/0 quotient (Neuman-Sandor, logarithmic, both Seiffert
 * means) are evaluated in the normalized gap x = |a - b| / (a + b) as
 * A(a,b) * x / f(x), switching to a Maclaurin expansion of x / f(x) close to
 * the diagonal. On the diagonal every mean returns a.
 *
 * @code
 * using namespace means_lab;
 * PositivePair pair{1.0, 2.0};
 * double m = evaluate_mean(MeanKind::neuman_sandor(), pair);
 * double l2 = evaluate_mean(MeanKind::generalized_log(2.0), pair);
 * @endcode
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <utility>

#include "numerics.hpp"

namespace means_lab {

/// Unordered pair of positive reals.
template <class Real>
class BasicPair {
 public:
  BasicPair(Real a, Real b) : a_(std::move(a)), b_(std::move(b)) {
    using std::isfinite;
    if (!(a_ > 0) || !(b_ > 0) || !isfinite(a_) || !isfinite(b_)) {
      throw std::domain_error("mean arguments must be positive and finite");
    }
  }

  const Real& a() const noexcept { return a_; }
  const Real& b() const noexcept { return b_; }
  const Real& larger() const noexcept { return a_ < b_ ? b_ : a_; }
  const Real& smaller() const noexcept { return a_ < b_ ? a_ : b_; }
  bool on_diagonal() const noexcept { return a_ == b_; }

  friend bool operator==(const BasicPair&, const BasicPair&) = default;

 private:
  Real a_;
  Real b_;
};

using PositivePair = BasicPair<double>;

/// |a - b| / (a + b), in [0, 1).
class NormalizedGap {
 public:
  explicit NormalizedGap(double x) : x_(x) {
    if (!(x >= 0.0 && x < 1.0)) {
      throw std::domain_error("normalized gap must lie in [0, 1)");
    }
  }
  double value() const noexcept { return x_; }

 private:
  double x_;
};

/// The ten mean families. GeneralizedLog carries its order p.
struct MeanKind {
  enum class Family : std::uint8_t {
    Harmonic,
    Geometric,
    Logarithmic,
    SeiffertFirst,
    Arithmetic,
    NeumanSandor,
    SeiffertSecond,
    Quadratic,
    ContraHarmonic,
    GeneralizedLog,
  };

  Family family = Family::Arithmetic;
  double p = 0.0;

  static constexpr MeanKind harmonic() { return {Family::Harmonic}; }
  static constexpr MeanKind geometric() { return {Family::Geometric}; }
  static constexpr MeanKind logarithmic() { return {Family::Logarithmic}; }
  static constexpr MeanKind seiffert_first() { return {Family::SeiffertFirst}; }
  static constexpr MeanKind arithmetic() { return {Family::Arithmetic}; }
  static constexpr MeanKind neuman_sandor() { return {Family::NeumanSandor}; }
  static constexpr MeanKind seiffert_second() { return {Family::SeiffertSecond}; }
  static constexpr MeanKind quadratic() { return {Family::Quadratic}; }
  static constexpr MeanKind contra_harmonic() { return {Family::ContraHarmonic}; }
  static constexpr MeanKind generalized_log(double p) { return {Family::GeneralizedLog, p}; }

  friend bool operator==(const MeanKind&, const MeanKind&) = default;
};

/// The nine fixed means in increasing order, H < G < L < P < A < M < T < Q < C.
inline constexpr std::array<MeanKind, 9> kMeanChain{
    MeanKind::harmonic(),       MeanKind::geometric(),    MeanKind::logarithmic(),
    MeanKind::seiffert_first(), MeanKind::arithmetic(),   MeanKind::neuman_sandor(),
    MeanKind::seiffert_second(), MeanKind::quadratic(),   MeanKind::contra_harmonic(),
};

/// Short symbol: H, G, L, P, A, M, T, Q, C, or L(p).
inline std::string mean_symbol(const MeanKind& kind) {
  using F = MeanKind::Family;
  switch (kind.family) {
    case F::Harmonic: return "H";
    case F::Geometric: return "G";
    case F::Logarithmic: return "L";
    case F::SeiffertFirst: return "P";
    case F::Arithmetic: return "A";
    case F::NeumanSandor: return "M";
    case F::SeiffertSecond: return "T";
    case F::Quadratic: return "Q";
    case F::ContraHarmonic: return "C";
    case F::GeneralizedLog: {
      char buf[48];
      std::snprintf(buf, sizeof buf, "L(%.17g)", kind.p);
      return buf;
    }
  }
  return "?";
}

namespace detail {

/// Below this gap the 0/0 means switch to their Maclaurin expansions. The
/// expansions are kept to x^8, so the switch point also has to satisfy
/// x^10 < epsilon for the wider types.
template <class Real>
Real near_diagonal_threshold() {
  using std::pow;
  const Real by_precision = pow(epsilon_of<Real>(), Real(0.1));
  return std::min(Real(1e-4), by_precision);
}

// x / asinh(x), x / atanh(x), x / asin(x), x / atan(x) as even polynomials in x.
template <class Real>
Real even_poly(const Real& x, const std::array<double, 4>& num, const std::array<double, 4>& den) {
  const Real xx = x * x;
  Real r = 0;
  for (int k = 3; k >= 0; --k) {
    r = (r + Real(num[k]) / Real(den[k])) * xx;
  }
  return Real(1) + r;
}

inline constexpr std::array<double, 4> kAsinhNum{1, -17, 367, -27859};
inline constexpr std::array<double, 4> kAsinhDen{6, 360, 15120, 1814400};
inline constexpr std::array<double, 4> kAtanhNum{-1, -4, -44, -428};
inline constexpr std::array<double, 4> kAtanhDen{3, 45, 945, 14175};
inline constexpr std::array<double, 4> kAsinNum{-1, -17, -367, -27859};
inline constexpr std::array<double, 4> kAsinDen{6, 360, 15120, 1814400};
inline constexpr std::array<double, 4> kAtanNum{1, -4, 44, -428};
inline constexpr std::array<double, 4> kAtanDen{3, 45, 945, 14175};

/// log(1 + x) and log(1 - x) from the pair itself, so neither loses digits
/// when x is close to 0 or to 1.
template <class Real>
struct GapLogs {
  Real log_plus;   // log(2 big / (big + small)) = log(1 + x)
  Real log_minus;  // log(2 small / (big + small)) = log(1 - x)
};

template <class Real>
GapLogs<Real> gap_logs(const Real& big, const Real& small, const Real& sum, const Real& x) {
  using std::log;
  using std::log1p;
  if (x < Real(0.5)) {
    return {log1p(x), log1p(-x)};
  }
  return {log(2 * big / sum), log(2 * small / sum)};
}

template <class Real>
Real generalized_log_mean(double p, const Real& big, const Real& small) {
  using std::abs;
  using std::exp;
  using std::log;
  using std::log1p;
  const Real sum = big + small;
  const Real diff = big - small;
  const Real mean = sum / 2;
  const Real x = diff / sum;
  const auto logs = gap_logs(big, small, sum, x);

  if (std::abs(p + 1.0) < 1e-8) {
    return diff / log1p(diff / small);
  }
  if (std::abs(p) < 1e-8) {
    // identric mean: (1/e) (b^b / a^a)^(1/(b-a))
    const Real u = 2 * big / sum;
    const Real v = 2 * small / sum;
    const Real expo = (u * logs.log_plus - v * logs.log_minus) / (2 * x) - 1;
    return mean * exp(expo);
  }
  // [((1+x)^y - (1-x)^y) / (2 y x)]^(1/p), y = p + 1, in log form:
  // (1-x)^y expm1(2 y atanh x) / (2 y x)
  const Real y = Real(p) + 1;
  const Real atanh_x = (logs.log_plus - logs.log_minus) / 2;
  const Real z = 2 * y * atanh_x;
  const Real log_s = y * logs.log_minus + log_expm1_ratio(z) + log(atanh_x / x);
  return mean * exp(log_s / Real(p));
}

}  // namespace detail

/// Evaluates the mean `kind` at `pair`. The result always lies in
/// [min(a,b), max(a,b)] and equals a on the diagonal.
template <class Real>
Real evaluate_mean(const MeanKind& kind, const BasicPair<Real>& pair) {
  using std::asin;
  using std::atan;
  using std::log1p;
  using std::sqrt;
  using F = MeanKind::Family;

  if (kind.family == F::GeneralizedLog && !std::isfinite(kind.p)) {
    throw std::domain_error("generalized logarithmic order must be finite");
  }
  if (pair.on_diagonal()) {
    return pair.a();
  }

  const Real& big = pair.larger();
  const Real& small = pair.smaller();
  const Real sum = big + small;
  const Real diff = big - small;
  const Real mean = sum / 2;
  const Real x = diff / sum;
  const bool series = x < detail::near_diagonal_threshold<Real>();

  Real r = mean;
  switch (kind.family) {
    case F::Harmonic:
      r = 2 * big * (small / sum);
      break;
    case F::Geometric:
      r = sqrt(big) * sqrt(small);
      break;
    case F::Arithmetic:
      r = mean;
      break;
    case F::Quadratic: {
      const Real q = small / big;
      r = big * sqrt((1 + q * q) / 2);
      break;
    }
    case F::ContraHarmonic: {
      const Real q = small / big;
      r = big * ((1 + q * q) / (1 + q));
      break;
    }
    case F::NeumanSandor:
      r = series ? mean * detail::even_poly(x, detail::kAsinhNum, detail::kAsinhDen)
                 : mean * (x / stable_asinh(x));
      break;
    case F::Logarithmic:
      r = series ? mean * detail::even_poly(x, detail::kAtanhNum, detail::kAtanhDen)
                 : diff / log1p(diff / small);
      break;
    case F::SeiffertFirst:
      r = series ? mean * detail::even_poly(x, detail::kAsinNum, detail::kAsinDen)
                 : mean * (x / asin(x));
      break;
    case F::SeiffertSecond:
      r = series ? mean * detail::even_poly(x, detail::kAtanNum, detail::kAtanDen)
                 : mean * (x / atan(x));
      break;
    case F::GeneralizedLog:
      r = detail::generalized_log_mean(kind.p, big, small);
      break;
  }
  // one-ulp excursions past the endpoints are rounding, not the mean
  if (r < small) r = small;
  if (r > big) r = big;
  return r;
}

/// |a - b| / (a + b).
inline NormalizedGap normalized_gap(const PositivePair& pair) {
  return NormalizedGap{(pair.larger() - pair.smaller()) / (pair.larger() + pair.smaller())};
}

/// (scale (1 + x), scale (1 - x)) in any floating type.
template <class Real>
BasicPair<Real> basic_pair_from_gap(const Real& x, const Real& scale) {
  if (!(x >= 0 && x < 1)) {
    throw std::domain_error("normalized gap must lie in [0, 1)");
  }
  if (!(scale > 0)) {
    throw std::domain_error("scale must be positive");
  }
  return BasicPair<Real>{scale * (1 + x), scale * (1 - x)};
}

inline PositivePair pair_from_gap(NormalizedGap x, double scale) {
  return basic_pair_from_gap<double>(x.value(), scale);
}

/// Converts a double pair to a wider type without rounding.
template <class Real>
BasicPair<Real> widen(const PositivePair& pair) {
  return BasicPair<Real>{Real(pair.a()), Real(pair.b())};
}

}  // namespace means_lab
