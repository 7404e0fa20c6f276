#pragma once

/**
 * @file certify.hpp
 * @brief Grid verification and sharpness probing of convex-combination bounds
 * for the Neuman-Sandor mean, recovery of the extremal weights, and the
 * classical inequality corpus.
 *
 * Margins are normalized by A(a,b). A point is first evaluated in double; if
 * its margin is within kEscalationThreshold of zero it is re-evaluated from
 * the same (gap, scale) in 50-digit arithmetic with the claim's weight at
 * full precision, so margins of order x^4 near the diagonal keep their sign.
 *
 * @code
 * using namespace means_lab;
 * const auto claims = theorem_claims(Theorem::GeometricQuadratic);
 * CertificationReport r = verify_bound(claims.lower, 100000);
 * SharpnessReport s = sharpness_probe(claims.lower, 1e-3);
 * // r.holds && s.violated
 * @endcode
 */

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "means.hpp"
#include "numerics.hpp"
#include "ratio_functions.hpp"
#include "series.hpp"
#include "sweep.hpp"

namespace means_lab {

/// Margins below this magnitude (normalized by A) are indistinguishable from
/// zero in double.
inline constexpr double kStrictnessFloor = 1e-15;
/// Double margins below this magnitude are recomputed in extended precision.
inline constexpr double kEscalationThreshold = 1e-12;
inline constexpr std::size_t kDefaultGridSize = 100000;
inline constexpr double kGridInnerGap = 1e-8;
inline constexpr int kProbeSteps = 60;
inline constexpr double kProbeFinestGap = 1e-15;

/// A weight in [0, 1] carried at extended precision, with its double rounding.
class Weight {
 public:
  Weight(double w) : exact_(w), approx_(w) {}  // NOLINT: implicit from double
  explicit Weight(const extended& w) : exact_(w), approx_(detail::to_double(w)) {}

  double value() const noexcept { return approx_; }
  const extended& exact() const noexcept { return exact_; }

  template <class Real>
  Real as() const {
    if constexpr (std::is_same_v<Real, double>) {
      return approx_;
    } else {
      return static_cast<Real>(exact_);
    }
  }

 private:
  extended exact_;
  double approx_;
};

/// w * first + (1 - w) * second.
struct ConvexCombination {
  Weight weight;
  MeanKind first;
  MeanKind second;

  template <class Real>
  Real value(const BasicPair<Real>& pair) const {
    const Real w = weight.as<Real>();
    return w * evaluate_mean(first, pair) + (1 - w) * evaluate_mean(second, pair);
  }
};

/// Whether the combination is claimed below (LessThanM) or above
/// (GreaterThanM) the Neuman-Sandor mean.
enum class Relation { LessThanM, GreaterThanM };
/// Endpoint of the gap domain where the ratio function reaches this weight.
enum class SharpAt { GapZero, GapOne };

struct BoundClaim {
  std::string id;
  ConvexCombination combination;
  Relation relation = Relation::LessThanM;
  Weight claimed_sharp_weight = 0.0;
  SharpAt sharp_at = SharpAt::GapZero;
};

enum class Theorem { HarmonicQuadratic, GeometricQuadratic, HarmonicContraHarmonic };

inline std::string_view theorem_label(Theorem t) {
  switch (t) {
    case Theorem::HarmonicQuadratic: return "1.1";
    case Theorem::GeometricQuadratic: return "1.2";
    case Theorem::HarmonicContraHarmonic: return "1.3";
  }
  return "?";
}

struct TheoremClaims {
  BoundClaim lower;  // combination < M
  BoundClaim upper;  // combination > M
};

/// The two sharp claims of each double inequality.
inline TheoremClaims theorem_claims(Theorem theorem) {
  const auto& k = sharp_constants<extended>();
  const std::string label{theorem_label(theorem)};
  auto make = [&](const char* side, const extended& w, MeanKind first, MeanKind second,
                  Relation rel, SharpAt at) {
    return BoundClaim{.id = label + "-" + side,
                      .combination = ConvexCombination{Weight{w}, first, second},
                      .relation = rel,
                      .claimed_sharp_weight = Weight{w},
                      .sharp_at = at};
  };
  const auto H = MeanKind::harmonic();
  const auto G = MeanKind::geometric();
  const auto Q = MeanKind::quadratic();
  const auto C = MeanKind::contra_harmonic();
  switch (theorem) {
    case Theorem::HarmonicQuadratic:
      return {make("lower", k.alpha1, H, Q, Relation::LessThanM, SharpAt::GapZero),
              make("upper", k.beta1, H, Q, Relation::GreaterThanM, SharpAt::GapOne)};
    case Theorem::GeometricQuadratic:
      return {make("lower", k.alpha2, G, Q, Relation::LessThanM, SharpAt::GapZero),
              make("upper", k.beta2, G, Q, Relation::GreaterThanM, SharpAt::GapOne)};
    case Theorem::HarmonicContraHarmonic:
      return {make("lower", k.alpha3, H, C, Relation::LessThanM, SharpAt::GapOne),
              make("upper", k.beta3, H, C, Relation::GreaterThanM, SharpAt::GapZero)};
  }
  throw std::logic_error("unknown theorem");
}

/// Copy of `claim` whose combination uses weight `w`.
inline BoundClaim with_weight(BoundClaim claim, Weight w) {
  claim.combination.weight = std::move(w);
  return claim;
}

/// Signed margin normalized by A: positive iff the claim holds at `pair`.
template <class Real>
Real normalized_margin(const BoundClaim& claim, const BasicPair<Real>& pair) {
  const Real m = evaluate_mean(MeanKind::neuman_sandor(), pair);
  const Real comb = claim.combination.value(pair);
  const Real a = evaluate_mean(MeanKind::arithmetic(), pair);
  return (claim.relation == Relation::LessThanM ? Real(m - comb) : Real(comb - m)) / a;
}

namespace detail {

/// Evaluates `fn` on the pair built by `make` in double, and again in
/// extended precision when the double margin is too small to trust.
template <class Fn, class Maker>
MarginSample hybrid_margin(const Fn& fn, const Maker& make) {
  const double m = fn(make(double{}));
  if (std::abs(m) >= kEscalationThreshold) return {m, false};
  const extended me = fn(make(extended{}));
  return {to_double(me), true};
}

/// Maker for the pair (scale (1 + x), scale (1 - x)).
struct GapPairMaker {
  double x;
  double scale;
  template <class Real>
  BasicPair<Real> operator()(Real) const {
    return basic_pair_from_gap<Real>(Real(x), Real(scale));
  }
};

inline void require_unit_weight(const Weight& w) {
  if (!(w.exact() >= 0 && w.exact() <= 1)) throw std::domain_error("weight must lie in [0, 1]");
}

}  // namespace detail

/// Normalized gaps placed geometrically toward both ends: x from 1e-8 to 0.5
/// and 1 - x from 1e-8 up to 0.5, ascending in x. Exactly `size` points.
inline std::vector<double> gap_grid(std::size_t size) {
  if (size < 2) throw std::domain_error("gap grid needs at least two points");
  const std::size_t upper = size / 2;
  const std::size_t lower = size - upper;
  const double span = std::log(0.5 / kGridInnerGap);
  std::vector<double> grid;
  grid.reserve(size);
  for (std::size_t i = 0; i < lower; ++i) {
    const double f = lower == 1 ? 1.0 : static_cast<double>(i) / static_cast<double>(lower - 1);
    grid.push_back(kGridInnerGap * std::exp(span * f));
  }
  // distance to 1 runs from just below 0.5 down to 1e-8
  for (std::size_t j = upper; j-- > 0;) {
    const double f = static_cast<double>(j) / static_cast<double>(upper);
    grid.push_back(1.0 - kGridInnerGap * std::exp(span * f));
  }
  return grid;
}

struct CertificationReport {
  std::string claim_id;
  std::size_t grid_size = 0;
  double scale = 1.0;
  std::optional<std::uint64_t> seed;
  double min_margin = 0.0;  // normalized by A
  PositivePair worst_pair{1.0, 1.0};
  double worst_gap = 0.0;
  bool holds = false;
  std::size_t escalated_points = 0;
  std::size_t below_floor_points = 0;
  std::size_t violations = 0;
};

/// Sweeps the claim over gap_grid(grid_size) at the given scale.
inline CertificationReport verify_bound(const BoundClaim& claim,
                                        std::size_t grid_size = kDefaultGridSize,
                                        double scale = 1.0) {
  if (grid_size < 100) throw std::domain_error("grid size must be at least 100");
  if (!(scale > 0.0 && std::isfinite(scale))) throw std::domain_error("scale must be positive");
  detail::require_unit_weight(claim.combination.weight);
  const auto grid = gap_grid(grid_size);
  const auto fn = [&claim](const auto& pair) { return normalized_margin(claim, pair); };
  const SweepSummary s = sweep_min(grid.size(), kStrictnessFloor, [&](std::size_t i) {
    return detail::hybrid_margin(fn, detail::GapPairMaker{grid[i], scale});
  });
  CertificationReport r;
  r.claim_id = claim.id;
  r.grid_size = grid_size;
  r.scale = scale;
  r.min_margin = s.min_margin;
  r.worst_gap = grid[s.argmin];
  r.worst_pair = pair_from_gap(NormalizedGap{grid[s.argmin]}, scale);
  r.holds = s.min_margin > 0.0;
  r.escalated_points = s.escalated;
  r.below_floor_points = s.below_floor;
  r.violations = s.negative;
  return r;
}

struct SharpnessReport {
  std::string claim_id;
  double epsilon = 0.0;
  double perturbed_weight = 0.0;
  bool violated = false;
  std::optional<PositivePair> witness;
  double witness_gap = 0.0;
  double witness_margin = 0.0;
  int steps = 0;  // refinement steps taken
};

/// Moves the claimed sharp weight by epsilon in the falsifying direction
/// (lower-bound weights down, upper-bound weights up) and walks the gap from
/// 1/2 geometrically toward the sharp endpoint, returning the first pair at
/// which the perturbed claim fails.
inline SharpnessReport sharpness_probe(const BoundClaim& claim, double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 1e-2)) {
    throw std::domain_error("epsilon must lie in (0, 0.01]");
  }
  const extended shift{epsilon};
  const extended w = claim.relation == Relation::LessThanM
                         ? extended(claim.claimed_sharp_weight.exact() - shift)
                         : extended(claim.claimed_sharp_weight.exact() + shift);
  const BoundClaim perturbed = with_weight(claim, Weight{w});
  detail::require_unit_weight(perturbed.combination.weight);

  SharpnessReport r;
  r.claim_id = claim.id;
  r.epsilon = epsilon;
  r.perturbed_weight = detail::to_double(w);
  const auto fn = [&perturbed](const auto& pair) { return normalized_margin(perturbed, pair); };
  const double ratio = std::log(kProbeFinestGap / 0.5);
  for (int k = 0; k <= kProbeSteps; ++k) {
    const double d = 0.5 * std::exp(ratio * k / kProbeSteps);
    const double x = claim.sharp_at == SharpAt::GapZero ? d : 1.0 - d;
    const MarginSample s = detail::hybrid_margin(fn, detail::GapPairMaker{x, 1.0});
    r.steps = k + 1;
    if (s.margin < 0.0) {
      r.violated = true;
      r.witness = pair_from_gap(NormalizedGap{x}, 1.0);
      r.witness_gap = normalized_gap(*r.witness).value();
      r.witness_margin = s.margin;
      return r;
    }
  }
  return r;
}

enum class Objective { Supremum, Infimum };
enum class ExtremumLocation { LowerLimit, UpperLimit, Interior };

struct RecoveryReport {
  RatioFunctionKind function = RatioFunctionKind::PhiHQ;
  Objective objective = Objective::Supremum;
  double value = 0.0;
  ExtremumLocation location = ExtremumLocation::Interior;
  double lower_limit = 0.0;
  double upper_limit = 0.0;
  double interior_best = 0.0;      // golden-section refined
  double interior_argument = 0.0;
  /// No scanned interior value beats both endpoint limits.
  bool monotone_consistent = true;
};

/// Extremum of a ratio function over its open domain: endpoint-dense grid
/// scan, golden-section refinement around the best sample, then comparison
/// with the closed-form endpoint limits.
inline RecoveryReport recover_constant(RatioFunctionKind fn, Objective objective, double tol,
                                       std::size_t scan_points = 4000) {
  if (!(tol >= 1e-12)) throw std::domain_error("tolerance must be at least 1e-12");
  const auto [lo, hi] = ratio_domain<double>(fn);
  const bool sup = objective == Objective::Supremum;
  const auto better = [sup](double a, double b) { return sup ? a > b : a < b; };
  const auto f = [fn](double arg) { return evaluate_ratio(fn, arg); };

  RecoveryReport r;
  r.function = fn;
  r.objective = objective;
  r.lower_limit = limit_at<double>(fn, Endpoint::Lower);
  r.upper_limit = limit_at<double>(fn, Endpoint::Upper);

  const auto unit = gap_grid(scan_points);
  std::vector<double> args;
  args.reserve(unit.size());
  for (double u : unit) {
    const double a = lo + u * (hi - lo);
    if (a > lo && a < hi) args.push_back(a);
  }
  std::size_t best = 0;
  std::vector<double> values(args.size());
  const double limit_extreme = sup ? std::max(r.lower_limit, r.upper_limit)
                                   : std::min(r.lower_limit, r.upper_limit);
  const double slack = 4 * std::numeric_limits<double>::epsilon() * std::abs(limit_extreme);
  for (std::size_t i = 0; i < args.size(); ++i) {
    values[i] = f(args[i]);
    if (better(values[i], values[best])) best = i;
    if (better(values[i], sup ? limit_extreme + slack : limit_extreme - slack)) {
      r.monotone_consistent = false;
    }
  }

  // golden section on the neighbours of the best sample
  double a = best > 0 ? args[best - 1] : lo + (args.front() - lo) * 1e-3;
  double b = best + 1 < args.size() ? args[best + 1] : hi - (hi - args.back()) * 1e-3;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int iter = 0; iter < 200 && (b - a) > tol * std::max(1.0, std::abs(a)); ++iter) {
    if (better(fc, fd)) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  r.interior_argument = better(fc, fd) ? c : d;
  r.interior_best = better(fc, fd) ? fc : fd;
  if (better(values[best], r.interior_best)) {
    r.interior_best = values[best];
    r.interior_argument = args[best];
  }

  // an interior sample within rounding of a limit is that limit
  const bool upper_wins = better(r.upper_limit, r.lower_limit);
  r.value = upper_wins ? r.upper_limit : r.lower_limit;
  r.location = upper_wins ? ExtremumLocation::UpperLimit : ExtremumLocation::LowerLimit;
  if (better(r.interior_best, sup ? r.value + slack : r.value - slack)) {
    r.value = r.interior_best;
    r.location = ExtremumLocation::Interior;
  }
  return r;
}

namespace detail {

/// Scale log-uniform in [1e-3, 1e3], gap uniform in (0, 1).
inline GapPairMaker draw_gap_pair(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> log_scale(-3.0, 3.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double scale = std::pow(10.0, log_scale(rng));
  double x = 0.0;
  while (x == 0.0) x = unit(rng);
  return {x, scale};
}

/// min over consecutive chain members of (m_(k+1) - m_k) / A.
template <class Real>
Real chain_margin(const BasicPair<Real>& pair) {
  std::array<Real, kMeanChain.size()> v;
  for (std::size_t k = 0; k < kMeanChain.size(); ++k) v[k] = evaluate_mean(kMeanChain[k], pair);
  const Real a = evaluate_mean(MeanKind::arithmetic(), pair);
  Real m = (v[1] - v[0]) / a;
  for (std::size_t k = 2; k < v.size(); ++k) {
    const Real d = (v[k] - v[k - 1]) / a;
    if (d < m) m = d;
  }
  return m;
}

template <class Maker>
CertificationReport sampled_report(std::string id, std::size_t samples, std::uint64_t seed,
                                   const std::vector<Maker>& makers,
                                   const auto& fn) {
  const SweepSummary s = sweep_min(makers.size(), kStrictnessFloor, [&](std::size_t i) {
    return hybrid_margin(fn, makers[i]);
  });
  CertificationReport r;
  r.claim_id = std::move(id);
  r.grid_size = samples;
  r.seed = seed;
  r.min_margin = s.min_margin;
  const auto worst = makers[s.argmin](double{});
  r.worst_pair = worst;
  r.worst_gap = normalized_gap(worst).value();
  r.holds = s.min_margin > 0.0;
  r.escalated_points = s.escalated;
  r.below_floor_points = s.below_floor;
  r.violations = s.negative;
  return r;
}

}  // namespace detail

/// Samples the chain H < G < L < P < A < M < T < Q < C on random pairs. The
/// margin is the smallest consecutive gap divided by A.
inline CertificationReport verify_chain(std::size_t samples, std::uint64_t seed) {
  if (samples < 1) throw std::domain_error("need at least one sample");
  std::mt19937_64 rng(seed);
  std::vector<detail::GapPairMaker> makers;
  makers.reserve(samples);
  for (std::size_t i = 0; i < samples; ++i) makers.push_back(detail::draw_gap_pair(rng));
  return detail::sampled_report("chain", samples, seed, makers,
                                [](const auto& pair) { return detail::chain_margin(pair); });
}

// ---------------------------------------------------------------------------
// Classical inequality corpus

enum class CorpusClaim {
  KyFan,                 // G/G' < L/L' < P/P' < A/A' < M/M' < T/T' on (0, 1/2)
  ArithmeticBelowM,      // A < M
  MBelowSeiffertSecond,  // M < T
  ProductBelowSquare,    // P M < A^2
  ProductBelowMSquare,   // A T < M^2
  MSquareBelowMeanSquare,  // M^2 < (A^2 + T^2) / 2
  LpZeroBelowM,          // L_(p0) < M
  MBelowL2,              // M < L_2
  QuadArithFirstLower,   // alpha Q + (1 - alpha) A < M, alpha = (1 - l)/((sqrt 2 - 1) l)
  QuadArithFirstUpper,   // M < Q/3 + 2A/3
  QuadArithSecondLower,  // lambda Q + (1 - lambda) A < M, lambda = (1 - l)/l
  QuadArithSecondUpper,  // M < Q/6 + 5A/6
};

inline constexpr std::array<CorpusClaim, 12> kCorpusClaims{
    CorpusClaim::KyFan,
    CorpusClaim::ArithmeticBelowM,
    CorpusClaim::MBelowSeiffertSecond,
    CorpusClaim::ProductBelowSquare,
    CorpusClaim::ProductBelowMSquare,
    CorpusClaim::MSquareBelowMeanSquare,
    CorpusClaim::LpZeroBelowM,
    CorpusClaim::MBelowL2,
    CorpusClaim::QuadArithFirstLower,
    CorpusClaim::QuadArithFirstUpper,
    CorpusClaim::QuadArithSecondLower,
    CorpusClaim::QuadArithSecondUpper,
};

inline std::string_view corpus_claim_id(CorpusClaim c) {
  switch (c) {
    case CorpusClaim::KyFan: return "ky-fan";
    case CorpusClaim::ArithmeticBelowM: return "a-lt-m";
    case CorpusClaim::MBelowSeiffertSecond: return "m-lt-t";
    case CorpusClaim::ProductBelowSquare: return "pm-lt-a2";
    case CorpusClaim::ProductBelowMSquare: return "at-lt-m2";
    case CorpusClaim::MSquareBelowMeanSquare: return "m2-lt-a2t2";
    case CorpusClaim::LpZeroBelowM: return "lp0-lt-m";
    case CorpusClaim::MBelowL2: return "m-lt-l2";
    case CorpusClaim::QuadArithFirstLower: return "qa-first-lower";
    case CorpusClaim::QuadArithFirstUpper: return "qa-first-upper";
    case CorpusClaim::QuadArithSecondLower: return "qa-second-lower";
    case CorpusClaim::QuadArithSecondUpper: return "qa-second-upper";
  }
  return "?";
}

/// The two printed Q/A double inequalities share one algebraic form with
/// different constants; their halves are sampled and reported, not required.
inline bool corpus_claim_required(CorpusClaim c) {
  switch (c) {
    case CorpusClaim::QuadArithFirstLower:
    case CorpusClaim::QuadArithFirstUpper:
    case CorpusClaim::QuadArithSecondLower:
    case CorpusClaim::QuadArithSecondUpper:
      return false;
    default:
      return true;
  }
}

/// The weights of the two Q/A displays.
template <class Real = double>
struct QuadArithWeights {
  Real first_lower;   // (1 - l) / ((sqrt 2 - 1) l) = 0.3249...
  Real first_upper;   // 1/3
  Real second_lower;  // (1 - l) / l = 0.1345...
  Real second_upper;  // 1/6
};

template <class Real = double>
QuadArithWeights<Real> quad_arith_weights() {
  using std::sqrt;
  const Real l = log_one_plus_sqrt2<Real>();
  return {(1 - l) / ((sqrt(Real(2)) - 1) * l), Real(1) / 3, (1 - l) / l, Real(1) / 6};
}

namespace detail {

template <class Real>
Real corpus_margin(CorpusClaim c, const BasicPair<Real>& pair) {
  const auto mean = [&](MeanKind k) { return evaluate_mean(k, pair); };
  const Real a = mean(MeanKind::arithmetic());
  const Real m = mean(MeanKind::neuman_sandor());
  const auto qa_margin = [&](const Real& w, bool lower) {
    const Real comb = w * mean(MeanKind::quadratic()) + (1 - w) * a;
    return (lower ? Real(m - comb) : Real(comb - m)) / a;
  };
  switch (c) {
    case CorpusClaim::KyFan: {
      static constexpr std::array<MeanKind, 6> kinds{
          MeanKind::geometric(),  MeanKind::logarithmic(),   MeanKind::seiffert_first(),
          MeanKind::arithmetic(), MeanKind::neuman_sandor(), MeanKind::seiffert_second()};
      const BasicPair<Real> complement{Real(1 - pair.a()), Real(1 - pair.b())};
      std::array<Real, 6> ratio;
      for (std::size_t k = 0; k < kinds.size(); ++k) {
        ratio[k] = evaluate_mean(kinds[k], pair) / evaluate_mean(kinds[k], complement);
      }
      Real worst = (ratio[1] - ratio[0]) / ratio[0];
      for (std::size_t k = 2; k < ratio.size(); ++k) {
        const Real d = (ratio[k] - ratio[k - 1]) / ratio[k - 1];
        if (d < worst) worst = d;
      }
      return worst;
    }
    case CorpusClaim::ArithmeticBelowM:
      return (m - a) / a;
    case CorpusClaim::MBelowSeiffertSecond:
      return (mean(MeanKind::seiffert_second()) - m) / a;
    case CorpusClaim::ProductBelowSquare:
      return (a * a - mean(MeanKind::seiffert_first()) * m) / (a * a);
    case CorpusClaim::ProductBelowMSquare:
      return (m * m - a * mean(MeanKind::seiffert_second())) / (a * a);
    case CorpusClaim::MSquareBelowMeanSquare: {
      const Real t = mean(MeanKind::seiffert_second());
      return ((a * a + t * t) / 2 - m * m) / (a * a);
    }
    case CorpusClaim::LpZeroBelowM:
      return (m - mean(MeanKind::generalized_log(sharp_constants<double>().p0))) / a;
    case CorpusClaim::MBelowL2:
      return (mean(MeanKind::generalized_log(2.0)) - m) / a;
    case CorpusClaim::QuadArithFirstLower:
      return qa_margin(quad_arith_weights<Real>().first_lower, true);
    case CorpusClaim::QuadArithFirstUpper:
      return qa_margin(quad_arith_weights<Real>().first_upper, false);
    case CorpusClaim::QuadArithSecondLower:
      return qa_margin(quad_arith_weights<Real>().second_lower, true);
    case CorpusClaim::QuadArithSecondUpper:
      return qa_margin(quad_arith_weights<Real>().second_upper, false);
  }
  throw std::logic_error("unknown corpus claim");
}

/// Pair with both entries uniform in (0, 1/2), for the Ky Fan comparison.
struct DirectPairMaker {
  double a;
  double b;
  template <class Real>
  BasicPair<Real> operator()(Real) const {
    return BasicPair<Real>{Real(a), Real(b)};
  }
};

}  // namespace detail

struct CorpusVerdict {
  CorpusClaim claim;
  bool required = true;
  CertificationReport report;
};

struct CorpusReport {
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  std::vector<CorpusVerdict> verdicts;
  /// Which Q/A display survived sampling: 1, 2, both (3) or neither (0).
  int surviving_quad_arith_display = 0;

  bool required_hold() const {
    for (const auto& v : verdicts) {
      if (v.required && !v.report.holds) return false;
    }
    return true;
  }
};

/// Samples every corpus claim. Claim k draws from its own generator seeded
/// with seed + k.
inline CorpusReport verify_corpus(std::size_t samples, std::uint64_t seed) {
  if (samples < 1) throw std::domain_error("need at least one sample");
  CorpusReport out;
  out.seed = seed;
  out.samples = samples;
  for (std::size_t k = 0; k < kCorpusClaims.size(); ++k) {
    const CorpusClaim claim = kCorpusClaims[k];
    std::mt19937_64 rng(seed + k);
    const auto fn = [claim](const auto& pair) { return detail::corpus_margin(claim, pair); };
    CertificationReport report;
    const std::string id{corpus_claim_id(claim)};
    if (claim == CorpusClaim::KyFan) {
      std::uniform_real_distribution<double> half(0.0, 0.5);
      std::vector<detail::DirectPairMaker> makers;
      makers.reserve(samples);
      while (makers.size() < samples) {
        const double a = half(rng);
        const double b = half(rng);
        if (a > 0.0 && b > 0.0 && a != b) makers.push_back({a, b});
      }
      report = detail::sampled_report(id, samples, seed + k, makers, fn);
    } else {
      std::vector<detail::GapPairMaker> makers;
      makers.reserve(samples);
      for (std::size_t i = 0; i < samples; ++i) makers.push_back(detail::draw_gap_pair(rng));
      report = detail::sampled_report(id, samples, seed + k, makers, fn);
    }
    out.verdicts.push_back({claim, corpus_claim_required(claim), std::move(report)});
  }
  const auto holds = [&](CorpusClaim c) {
    for (const auto& v : out.verdicts) {
      if (v.claim == c) return v.report.holds;
    }
    return false;
  };
  const bool first = holds(CorpusClaim::QuadArithFirstLower) && holds(CorpusClaim::QuadArithFirstUpper);
  const bool second =
      holds(CorpusClaim::QuadArithSecondLower) && holds(CorpusClaim::QuadArithSecondUpper);
  out.surviving_quad_arith_display = (first ? 1 : 0) + (second ? 2 : 0);
  return out;
}

}  // namespace means_lab
