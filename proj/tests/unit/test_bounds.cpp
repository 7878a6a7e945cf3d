#include <gtest/gtest.h>

#include <cmath>

#include "l2ext/bergman.hpp"
#include "l2ext/bounds.hpp"
#include "l2ext/errors.hpp"
#include "oracle.hpp"

using namespace l2ext;

namespace {

const VPolynomial kOne{{MultiIndex{}, 1.0}};

RadialScenario disc() { return {"disc", 1, 1, Weight::ball_standard(1.0), kOne}; }
RadialScenario ball2() { return {"ball2", 2, 2, Weight::ball_standard(2.0), kOne}; }

double min_norm(const RadialScenario& s, int d = 8) {
  const GramMatrix g = gram_matrix(DomainSpec::ball(1.0, s.n), s.weight, MultiIndexBasis(s.n, d, s.k));
  return min_norm_extension(s.f, g).squared_norm;
}

} // namespace

TEST(Constants, SigmaMuSmallCases) {
  EXPECT_NEAR(sigma_mu(1).sigma, oracle::pi, 1e-15);
  EXPECT_NEAR(sigma_mu(1).mu, 2 * oracle::pi, 1e-15);
  EXPECT_NEAR(sigma_mu(2).sigma, oracle::pi * oracle::pi / 2, 1e-14);
  EXPECT_NEAR(sigma_mu(2).mu, 2 * oracle::pi * oracle::pi, 1e-14);
}

TEST(Constants, SphereIsDerivativeOfBall) {
  for (int k = 1; k <= 6; ++k) {
    EXPECT_NEAR(sigma_mu(k).mu, 2 * k * sigma_mu(k).sigma, 1e-13 * sigma_mu(k).mu);
    EXPECT_NEAR(sigma_mu(k).sigma, oracle::ball_volume(k), 1e-13 * oracle::ball_volume(k));
  }
}

TEST(Constants, FactorialsAndRanges) {
  EXPECT_EQ(factorial(0), 1u);
  EXPECT_EQ(factorial(10), 3628800u);
  EXPECT_EQ(factorial(20), 2432902008176640000ULL);
  EXPECT_THROW(factorial(21), InvalidArgument);
  EXPECT_THROW(sigma_mu(0), InvalidArgument);
}

TEST(GreenGap, ConstantMultiplication) {
  EXPECT_NEAR(green_gap_rhs(1.0, 2, 1.0), oracle::pi * oracle::pi / 2, 1e-14);
  EXPECT_THROW(green_gap_rhs(1.0, 2, -1e-9), InvalidArgument);
  EXPECT_THROW(green_gap_rhs(0.5, 2, 1.0), InvalidArgument);
}

TEST(GreenGap, BallPairTrace) {
  const RadialScenario s{"pair", 4, 2, Weight::trivial(), VPolynomial{{MultiIndex{0, 0}, 1.0}}};
  const double trace = oracle::ball_weight_moment(2, 2.0);
  EXPECT_NEAR(weighted_trace(s), trace, 1e-12);
  EXPECT_NEAR(green_gap_rhs(s), oracle::ball_volume(2) * trace, 1e-11);
  EXPECT_NEAR(green_gap_rhs(s), 4.0587, 1e-4);
}

TEST(GreenGap, ZeroDataGivesZero) {
  RadialScenario s{"pair", 4, 2, Weight::trivial(), VPolynomial{{MultiIndex{0, 0}, 0.0}}};
  EXPECT_EQ(green_gap_rhs(s), 0.0);
  EXPECT_EQ(indicatrix_rhs(s), 0.0);
}

TEST(LiftRoute, DiscIsHalfPi) {
  EXPECT_NEAR(lift_route_rhs(disc()), oracle::pi / 2, 1e-12);
  const RadialScenario radial{"disc_radial", 1, 1, Weight::radial(RadialProfile::log_singular(), 1), kOne};
  EXPECT_NEAR(lift_route_rhs(radial), oracle::pi / 2, 1e-12);
}

TEST(LiftRoute, TwoBallIsPiSquaredOverTwelve) {
  EXPECT_NEAR(lift_route_rhs(ball2()), oracle::ball_weight_moment(2, 2.0), 1e-12);
}

TEST(LiftRoute, TrivialWeightHasNoCatalogModel) {
  const RadialScenario s{"flat", 1, 1, Weight::trivial(), kOne};
  EXPECT_THROW(lift_route_rhs(s), UnsupportedError);
  const RadialScenario reg{"reg", 1, 1, epsilon_regularize(Weight::ball_standard(1.0), 0.1), kOne};
  EXPECT_THROW(lift_route_rhs(reg), UnsupportedError);
}

TEST(LiftRoute, TwoRoutesAgree) {
  for (const auto& s : {disc(), ball2()})
    EXPECT_NEAR(lift_indicatrix_integral(s), sigma_mu(s.k).sigma * lift_trace(s), 1e-12);
}

TEST(Indicatrix, TwoBallPointIsSigmaTwo) {
  for (const auto& w : {Weight::ball_standard(2.0), Weight::trivial(),
                        Weight::radial(RadialProfile::scaled_log(3.0), 2)}) {
    const RadialScenario s{"b2", 2, 2, w, kOne};
    EXPECT_NEAR(indicatrix_rhs(s), oracle::ball_volume(2), 1e-13) << w.name();
  }
}

TEST(Indicatrix, FourBallPair) {
  const RadialScenario s{"pair", 4, 2, Weight::trivial(), VPolynomial{{MultiIndex{0, 0}, 1.0}}};
  EXPECT_NEAR(indicatrix_rhs(s), std::pow(oracle::pi, 4) / 24, 1e-11);
}

TEST(Indicatrix, MatchesGreenGapOnBallPairs) {
  const RadialScenario s{"line", 3, 1, Weight::radial(RadialProfile::scaled_log(1.5), 1),
                         VPolynomial{{MultiIndex{1, 0}, 1.0}, {MultiIndex{0, 2}, Complex(0.0, 2.0)}}};
  EXPECT_NEAR(indicatrix_rhs(s), green_gap_rhs(s), 1e-12 * green_gap_rhs(s));
  // pi * int_{B^2} (1 - |v|^2)(|v_1|^2 + 4|v_2|^4), polar in both coordinates
  const double expected =
      oracle::pi * oracle::pi * oracle::pi *
      (oracle::simpson([](double x) { return std::pow(1 - x, 3) / 6; }, 0, 1) +
       4 * oracle::simpson([](double x) { return std::pow(1 - x, 4) / 12; }, 0, 1));
  EXPECT_NEAR(indicatrix_rhs(s), expected, 1e-10 * expected);
}

TEST(BallLiftRatio, ExactValues) {
  EXPECT_NEAR(ball_lift_ratio(2), oracle::pi * oracle::pi / 12, 1e-15);
  EXPECT_NEAR(ball_lift_ratio(3), std::pow(oracle::pi, 3) / 120, 1e-15);
  EXPECT_NEAR(ball_lift_ratio(1), oracle::pi / 2, 1e-15);
  EXPECT_GE(ball_lift_ratio(1), 1.0);
  for (int n = 1; n <= 12; ++n)
    EXPECT_NEAR(ball_lift_ratio(n), oracle::ball_weight_moment(n, n), 1e-12 * ball_lift_ratio(n));
}

TEST(BallLiftRatio, BelowOneAndDecreasing) {
  for (int n = 2; n <= 6; ++n) {
    EXPECT_LT(ball_lift_ratio(n), 1.0);
    EXPECT_LT(ball_lift_ratio(n + 1), ball_lift_ratio(n));
  }
}

TEST(BallLiftRatio, QuadratureAndMonteCarloCrossChecks) {
  for (int n = 1; n <= 4; ++n)
    EXPECT_NEAR(ball_lift_ratio_quadrature(n).value, ball_lift_ratio(n), 1e-12 * ball_lift_ratio(n));
  const auto mc = ball_lift_ratio_mc(2, 1'000'000, 41);
  EXPECT_NEAR(mc.value, ball_lift_ratio(2), 0.01 * ball_lift_ratio(2));
  EXPECT_LE(std::abs(mc.value - ball_lift_ratio(2)), 3 * mc.error_estimate);
  EXPECT_THROW(ball_lift_ratio(0), InvalidArgument);
}

TEST(Strictness, TwoBallPair) {
  const auto g = strictness_gap(ball2());
  EXPECT_NEAR(g.left, oracle::pi * oracle::pi / 12, 1e-12);
  EXPECT_NEAR(g.right, oracle::pi * oracle::pi / 2, 1e-12);
  EXPECT_NEAR(g.gap, 5 * oracle::pi * oracle::pi / 12, 1e-12);
  EXPECT_TRUE(g.strict);
}

TEST(Strictness, Disc) {
  const auto g = strictness_gap(disc());
  EXPECT_NEAR(g.left, oracle::pi / 2, 1e-12);
  EXPECT_NEAR(g.right, oracle::pi, 1e-12);
  EXPECT_NEAR(g.gap, oracle::pi / 2, 1e-12);
  EXPECT_TRUE(g.strict);
}

TEST(Strictness, ZeroDataIsNotStrict) {
  RadialScenario s = disc();
  s.f = VPolynomial{{MultiIndex{}, 0.0}};
  const auto g = strictness_gap(s);
  EXPECT_EQ(g.gap, 0.0);
  EXPECT_FALSE(g.strict);
}

TEST(Ordering, MinimalNormBelowLiftBelowIndicatrix) {
  for (int k = 1; k <= 3; ++k)
    for (const auto& w : {Weight::ball_standard(k), Weight::radial(RadialProfile::log_singular(), k),
                          Weight::radial(RadialProfile::scaled_log(2.0), k),
                          Weight::radial(RadialProfile::scaled_log(0.5), k)}) {
      const RadialScenario s{"o", k, k, w, kOne};
      const double m = min_norm(s, 6);
      const double lift = lift_route_rhs(s);
      const double ind = indicatrix_rhs(s);
      EXPECT_LE(m, lift * (1 + 1e-6)) << w.name() << " k=" << k;
      EXPECT_NEAR(lift, m, 1e-6 * m) << w.name() << " k=" << k;
      EXPECT_LE(lift, ind) << w.name() << " k=" << k;
    }
}

TEST(Ordering, HigherDimensionalBaseStillBoundsMinimalNorm) {
  const RadialScenario s{"line", 3, 1, Weight::radial(RadialProfile::log_singular(), 1),
                         VPolynomial{{MultiIndex{1, 0}, 1.0}}};
  const double m = min_norm(s, 4);
  EXPECT_LE(m, lift_route_rhs(s));
  EXPECT_LE(m, indicatrix_rhs(s));
  EXPECT_LE(m, green_gap_rhs(s));
}

TEST(Ordering, SharpnessFactorsAreCentralBinomials) {
  EXPECT_NEAR(indicatrix_rhs(disc()) / min_norm(disc()), 2.0, 1e-6);
  EXPECT_NEAR(indicatrix_rhs(ball2()) / min_norm(ball2()), 6.0, 1e-6);
}

TEST(Report, FillsComparisons) {
  const RadialScenario s = ball2();
  const double m = min_norm(s);
  const BoundReport r = bound_report(s, m);
  EXPECT_EQ(r.scenario_id, "ball2");
  ASSERT_TRUE(r.lift_route_rhs.has_value());
  EXPECT_NEAR(r.strictness_margin, 5 * oracle::pi * oracle::pi / 12, 1e-12);
  EXPECT_EQ(r.sigma_k, sigma_mu(2).sigma);
  const GramMatrix g = gram_matrix(DomainSpec::ball(1.0, 2), s.weight, MultiIndexBasis(2, 8, 2));
  ExtensionResult ext = min_norm_extension(s.f, g);
  attach_bounds(ext, r);
  ASSERT_EQ(ext.bound_comparisons.size(), 3u);
  for (const auto& c : ext.bound_comparisons) EXPECT_GE(c.margin, -1e-6 * m) << c.name;

  const BoundReport flat = bound_report(RadialScenario{"flat", 1, 1, Weight::trivial(), kOne}, oracle::pi);
  EXPECT_FALSE(flat.lift_route_rhs.has_value());
}

TEST(Scenario, Validation) {
  EXPECT_THROW(validate(RadialScenario{"bad", 1, 2, Weight::trivial(), kOne}), InvalidArgument);
  EXPECT_THROW(validate(RadialScenario{"bad", 2, 1, Weight::trivial(), kOne}), InvalidArgument);
}
