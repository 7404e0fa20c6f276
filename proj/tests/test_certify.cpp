#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <random>

#include "means_lab/certify.hpp"
#include "oracle.hpp"

using namespace means_lab;
using RF = RatioFunctionKind;

namespace {

constexpr std::size_t kUnitGrid = 20000;

std::vector<BoundClaim> all_claims() {
  std::vector<BoundClaim> out;
  for (Theorem t : {Theorem::HarmonicQuadratic, Theorem::GeometricQuadratic,
                    Theorem::HarmonicContraHarmonic}) {
    const auto c = theorem_claims(t);
    out.push_back(c.lower);
    out.push_back(c.upper);
  }
  return out;
}

// Restores MEANS_LAB_THREADS on scope exit.
class ThreadOverride {
 public:
  explicit ThreadOverride(const char* value) {
    if (const char* old = std::getenv("MEANS_LAB_THREADS")) saved_ = old;
    setenv("MEANS_LAB_THREADS", value, 1);
  }
  ~ThreadOverride() {
    if (saved_.empty()) {
      unsetenv("MEANS_LAB_THREADS");
    } else {
      setenv("MEANS_LAB_THREADS", saved_.c_str(), 1);
    }
  }

 private:
  std::string saved_;
};

}  // namespace

TEST(GapGrid, ShapeAndOrder) {
  const auto g = gap_grid(1000);
  ASSERT_EQ(g.size(), 1000u);
  EXPECT_DOUBLE_EQ(g.front(), 1e-8);
  EXPECT_NEAR(1 - g.back(), 1e-8, 1e-16);
  for (std::size_t i = 1; i < g.size(); ++i) ASSERT_LT(g[i - 1], g[i]);
  EXPECT_EQ(gap_grid(1001).size(), 1001u);
  EXPECT_THROW(gap_grid(1), std::domain_error);
}

TEST(Claims, LabelsAndEndpoints) {
  const auto c = theorem_claims(Theorem::HarmonicContraHarmonic);
  EXPECT_EQ(c.lower.id, "1.3-lower");
  EXPECT_EQ(c.upper.id, "1.3-upper");
  EXPECT_EQ(c.lower.sharp_at, SharpAt::GapOne);
  EXPECT_EQ(c.upper.sharp_at, SharpAt::GapZero);
  EXPECT_EQ(theorem_claims(Theorem::HarmonicQuadratic).lower.combination.weight.value(), 2.0 / 9.0);
}

TEST(VerifyBound, SharpClaimsHold) {
  for (const auto& claim : all_claims()) {
    const auto r = verify_bound(claim, kUnitGrid);
    EXPECT_TRUE(r.holds) << claim.id << " margin " << r.min_margin;
    EXPECT_GT(r.min_margin, 0.0) << claim.id;
    EXPECT_EQ(r.violations, 0u);
    EXPECT_EQ(r.grid_size, kUnitGrid);
  }
}

TEST(VerifyBound, DegenerateQuadraticUpperBound) {
  auto claim = with_weight(theorem_claims(Theorem::HarmonicQuadratic).upper, 0.0);
  const auto r = verify_bound(claim, 1000);
  EXPECT_TRUE(r.holds);
  const auto& p = r.worst_pair;
  const double expected = (evaluate_mean(MeanKind::quadratic(), p) -
                           evaluate_mean(MeanKind::neuman_sandor(), p)) /
                          evaluate_mean(MeanKind::arithmetic(), p);
  EXPECT_NEAR(r.min_margin, expected, 1e-15);
}

TEST(VerifyBound, SubSharpWeightFails) {
  const auto claim = with_weight(theorem_claims(Theorem::HarmonicQuadratic).lower, 0.2210);
  const auto r = verify_bound(claim, kUnitGrid);
  EXPECT_FALSE(r.holds);
  EXPECT_LT(r.min_margin, 0.0);
  EXPECT_LT(r.worst_gap, 0.2);
}

TEST(VerifyBound, Errors) {
  const auto claim = theorem_claims(Theorem::GeometricQuadratic).lower;
  EXPECT_THROW(verify_bound(with_weight(claim, 1.5), 1000), std::domain_error);
  EXPECT_THROW(verify_bound(with_weight(claim, -0.1), 1000), std::domain_error);
  EXPECT_THROW(verify_bound(claim, 99), std::domain_error);
  EXPECT_THROW(verify_bound(claim, 1000, 0.0), std::domain_error);
}

TEST(VerifyBound, ScaleInvariance) {
  for (const auto& claim : all_claims()) {
    const auto unit = verify_bound(claim, 2000, 1.0);
    const auto big = verify_bound(claim, 2000, 1e3);
    EXPECT_LE(std::abs(unit.min_margin - big.min_margin), 1e-12 * std::abs(unit.min_margin))
        << claim.id;
    EXPECT_EQ(unit.worst_gap, big.worst_gap);
  }
}

TEST(VerifyBound, IndependentOfThreadCount) {
  const auto claim = theorem_claims(Theorem::HarmonicContraHarmonic).lower;
  CertificationReport one;
  CertificationReport three;
  {
    ThreadOverride guard("1");
    one = verify_bound(claim, 3000);
  }
  {
    ThreadOverride guard("3");
    three = verify_bound(claim, 3000);
  }
  EXPECT_EQ(one.min_margin, three.min_margin);
  EXPECT_EQ(one.worst_pair, three.worst_pair);
  EXPECT_EQ(one.escalated_points, three.escalated_points);
}

TEST(Sharpness, Examples) {
  const auto hq = theorem_claims(Theorem::HarmonicQuadratic);
  const auto lower = sharpness_probe(hq.lower, 1e-3);
  ASSERT_TRUE(lower.violated);
  EXPECT_LT(lower.witness_gap, 0.2);
  EXPECT_LT(lower.witness_margin, 0.0);
  EXPECT_NEAR(lower.perturbed_weight, 2.0 / 9.0 - 1e-3, 1e-16);

  const auto upper = sharpness_probe(hq.upper, 1e-3);
  ASSERT_TRUE(upper.violated);
  EXPECT_GT(upper.witness_gap, 0.95);

  const auto hc_upper = sharpness_probe(theorem_claims(Theorem::HarmonicContraHarmonic).upper, 1e-3);
  ASSERT_TRUE(hc_upper.violated);
  EXPECT_LT(hc_upper.witness_gap, 0.2);
}

TEST(Sharpness, WitnessReallyFails) {
  for (const auto& claim : all_claims()) {
    const auto r = sharpness_probe(claim, 1e-3);
    ASSERT_TRUE(r.violated) << claim.id;
    const auto perturbed = with_weight(claim, r.perturbed_weight);
    const auto pair = widen<extended>(*r.witness);
    EXPECT_LT(normalized_margin(perturbed, pair), 0) << claim.id;
    // the unperturbed sharp claim still holds there
    EXPECT_GT(normalized_margin(claim, pair), 0) << claim.id;
  }
}

TEST(Sharpness, Errors) {
  const auto claim = theorem_claims(Theorem::HarmonicQuadratic).lower;
  EXPECT_THROW(sharpness_probe(claim, 0.0), std::domain_error);
  EXPECT_THROW(sharpness_probe(claim, -1e-3), std::domain_error);
  EXPECT_THROW(sharpness_probe(claim, 0.02), std::domain_error);
}

TEST(Recovery, Examples) {
  const auto& k = sharp_constants();
  const auto hq = recover_constant(RF::PhiHQ, Objective::Supremum, 1e-9);
  EXPECT_NEAR(hq.value, 2.0 / 9.0, 1e-9);
  EXPECT_EQ(hq.location, ExtremumLocation::LowerLimit);
  const auto hc = recover_constant(RF::PhiHC, Objective::Supremum, 1e-9);
  EXPECT_NEAR(hc.value, k.alpha3, 1e-9);
  EXPECT_EQ(hc.location, ExtremumLocation::UpperLimit);
  const auto gq = recover_constant(RF::RatioGQ, Objective::Infimum, 1e-9);
  EXPECT_NEAR(gq.value, k.lambda0, 1e-9);
}

TEST(Recovery, AllSixConstantsAndMonotoneConsistency) {
  const auto& k = sharp_constants();
  struct Case {
    RF fn;
    Objective obj;
    double expected;
  };
  const Case cases[] = {
      {RF::PhiHQ, Objective::Supremum, k.alpha1},  {RF::PhiHQ, Objective::Infimum, k.beta1},
      {RF::RatioGQ, Objective::Supremum, k.alpha2}, {RF::RatioGQ, Objective::Infimum, k.beta2},
      {RF::PhiHC, Objective::Supremum, k.alpha3},  {RF::PhiHC, Objective::Infimum, k.beta3},
  };
  for (const auto& c : cases) {
    const auto r = recover_constant(c.fn, c.obj, 1e-9);
    EXPECT_NEAR(r.value, c.expected, 1e-9) << ratio_function_name(c.fn);
    EXPECT_TRUE(r.monotone_consistent) << ratio_function_name(c.fn);
    EXPECT_NE(r.location, ExtremumLocation::Interior) << ratio_function_name(c.fn);
  }
}

TEST(Recovery, Errors) {
  EXPECT_THROW(recover_constant(RF::PhiHQ, Objective::Supremum, 1e-13), std::domain_error);
  EXPECT_THROW(recover_constant(RF::PhiHQ, Objective::Supremum, 0.0), std::domain_error);
}

TEST(RatioMarginEquivalence, HarmonicQuadratic) {
  const auto base = theorem_claims(Theorem::HarmonicQuadratic).lower;
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int compared = 0;
  for (int i = 0; i < 10000; ++i) {
    const double x = 1e-6 + (1 - 2e-6) * unit(rng);
    const double w = 0.15 + 0.1 * unit(rng);  // spans [lambda0, 2/9] and beyond
    const double phi = phi_hq(stable_asinh(x));
    if (std::abs(w - phi) < 1e-12) continue;
    ++compared;
    const auto pair = basic_pair_from_gap<extended>(extended(x), extended(1));
    const extended margin = normalized_margin(with_weight(base, w), pair);  // M - combination
    ASSERT_EQ(margin > 0, w > phi) << "w=" << w << " x=" << x;
  }
  EXPECT_GT(compared, 9900);
}

TEST(Chain, HoldsOnSeededSamples) {
  const auto r = verify_chain(100000, 42);
  EXPECT_TRUE(r.holds) << r.min_margin;
  ASSERT_TRUE(r.seed);
  EXPECT_EQ(*r.seed, 42u);
  EXPECT_EQ(r.grid_size, 100000u);
}

TEST(Chain, ReproducibleForSeed) {
  const auto a = verify_chain(2000, 7);
  const auto b = verify_chain(2000, 7);
  EXPECT_EQ(a.min_margin, b.min_margin);
  EXPECT_EQ(a.worst_pair, b.worst_pair);
  EXPECT_NE(verify_chain(2000, 8).min_margin, a.min_margin);
  EXPECT_THROW(verify_chain(0, 1), std::domain_error);
}

TEST(Corpus, RequiredClaimsHoldAndFirstDisplaySurvives) {
  const auto c = verify_corpus(10000, 42);
  EXPECT_TRUE(c.required_hold());
  EXPECT_EQ(c.verdicts.size(), kCorpusClaims.size());
  for (const auto& v : c.verdicts) {
    if (v.required) {
      EXPECT_TRUE(v.report.holds) << corpus_claim_id(v.claim);
    }
    ASSERT_TRUE(v.report.seed);
  }
  EXPECT_EQ(c.surviving_quad_arith_display, 1);
}

TEST(Corpus, QuadArithWeights) {
  const auto w = quad_arith_weights();
  EXPECT_NEAR(w.first_lower, 0.3249, 1e-4);
  EXPECT_NEAR(w.second_lower, 0.1345, 1e-4);
  EXPECT_EQ(w.first_upper, 1.0 / 3.0);
  EXPECT_EQ(w.second_upper, 1.0 / 6.0);
}
