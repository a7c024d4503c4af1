#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "speclab/error.hpp"
#include "speclab/potential.hpp"
#include "speclab/sublevel.hpp"
#include "test_support.hpp"

using namespace speclab;

namespace {

constexpr double kPi = std::numbers::pi;

PotentialExpr pot(const char* text, int nu = 2) { return parse_potential(text, nu); }

bool ind(const PotentialExpr& v, double m, std::vector<double> x) { return indicator(v, m, x); }

// |{|x1 x2| < 1} inside B_R|, adaptive quadrature computed before the build.
const std::vector<std::pair<double, double>> kHyperbolicArea = {
    {10.0, 22.4205473986171}, {20.0, 27.9658498550517}, {40.0, 33.511035112078}, {80.0, 39.056213044839}};

}  // namespace

TEST(Indicator, WorkedExamples) {
  const auto v = pot("x1^2*x2^2");
  EXPECT_TRUE(ind(v, 1, {5, 0}));
  EXPECT_FALSE(ind(v, 1, {2, 2}));
  EXPECT_TRUE(ind(pot("x1^2+x2^2"), 4, {1, 1}));
  EXPECT_FALSE(ind(pot("x1^2+x2^2"), 4, {2, 0}));
}

TEST(Indicator, Errors) {
  EXPECT_THROW(ind(pot("x1 - 1"), 1, {0, 0}), DomainError);
  EXPECT_THROW(ind(pot("x1^2"), 0, {0, 0}), DomainError);
  EXPECT_THROW(ind(pot("x1^2"), 1, {0}), DimensionError);
}

TEST(Indicator, MonotoneInLevel) {
  test::Gen gen(501);
  const auto v = pot("x1^2*x2^4 + x1^4*x2^2");
  for (int i = 0; i < 1000; ++i) {
    std::vector<double> x{gen.uniform(-3, 3), gen.uniform(-3, 3)};
    const double m1 = gen.uniform(0.1, 5), m2 = m1 + gen.uniform(0.0, 5);
    if (indicator(v, m1, x)) EXPECT_TRUE(indicator(v, m2, x));
  }
}

TEST(Region, VolumesAndContainment) {
  EXPECT_NEAR(ball_volume(1, 2.0), 4.0, 1e-15);
  EXPECT_NEAR(ball_volume(2, 2.0), 4 * kPi, 1e-14);
  EXPECT_NEAR(ball_volume(3, 1.0), 4 * kPi / 3, 1e-14);
  EXPECT_DOUBLE_EQ(Region::box({0, 0}, {3, 1}).volume(), 12.0);
  std::vector<double> p{0.9, 0.0};
  EXPECT_TRUE(Region::ball({0, 0}, 1).contains(p));
  EXPECT_THROW(Region::ball({0, 0}, 0.0), DomainError);
  EXPECT_THROW(Region::box({0, 0}, {1}), DimensionError);
}

TEST(Measure, DiscOfRadiusTwo) {
  const auto v = pot("x1^2+x2^2");
  const auto mc = measure(v, 4, Region::box({0, 0}, {3, 3}), MeasureMethod::MonteCarlo, 1'000'000, 1);
  EXPECT_LE(std::abs(mc.value - 4 * kPi), 3 * mc.std_error);
  EXPECT_GT(mc.std_error, 0.0);
  EXPECT_EQ(mc.samples, 1'000'000u);

  const auto grid = measure(v, 4, Region::box({0, 0}, {3, 3}), MeasureMethod::GridQuadrature, 1'000'000, 1);
  EXPECT_EQ(grid.std_error, 0.0);
  EXPECT_NEAR(grid.value, 4 * kPi, 0.01);
}

TEST(Measure, WholeRegion) {
  const auto v = pot("0");
  const auto mc = measure(v, 1, Region::ball({0, 0}, 1), MeasureMethod::MonteCarlo, 10'000, 3);
  EXPECT_DOUBLE_EQ(mc.value, kPi);
  EXPECT_EQ(mc.std_error, 0.0);
  const auto empty = measure(pot("1 + x1^2"), 0.5, Region::ball({0, 0}, 1), MeasureMethod::MonteCarlo, 10'000, 3);
  EXPECT_EQ(empty.value, 0.0);
  EXPECT_EQ(empty.std_error, 0.0);
}

TEST(Measure, BudgetChecks) {
  const auto v = pot("x1^2");
  EXPECT_THROW(measure(v, 1, Region::ball({0, 0}, 1), MeasureMethod::MonteCarlo, 999, 1), BudgetError);
  EXPECT_THROW(measure(v, 1, Region::ball({0, 0}, 1), MeasureMethod::GridQuadrature, 9'999, 1), BudgetError);
  EXPECT_THROW(measure(v, 1, Region::ball({0, 0, 0}, 1), MeasureMethod::MonteCarlo, 1000, 1), DimensionError);
}

TEST(Measure, HyperbolicCrossAgainstQuadratureOracle) {
  const auto v = pot("x1^2*x2^2");
  double previous = 0.0;
  for (const auto& [radius, oracle] : kHyperbolicArea) {
    const auto m = measure(v, 1, Region::ball({0, 0}, radius), MeasureMethod::MonteCarlo, 2'000'000, 5);
    EXPECT_LE(std::abs(m.value - oracle), 4 * m.std_error) << "R=" << radius;
    EXPECT_GT(m.value, previous + 3.0);
    previous = m.value;
  }
}

TEST(Measure, SeededDeterminism) {
  const auto v = pot("x1^2*x2^2");
  const auto a = measure(v, 1, Region::ball({0, 0}, 10), MeasureMethod::MonteCarlo, 100'000, 77);
  const auto b = measure(v, 1, Region::ball({0, 0}, 10), MeasureMethod::MonteCarlo, 100'000, 77);
  const auto c = measure(v, 1, Region::ball({0, 0}, 10), MeasureMethod::MonteCarlo, 100'000, 78);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.std_error, b.std_error);
  EXPECT_NE(a.value, c.value);
}

TEST(Measure, MonotoneInLevel) {
  const auto v = pot("x1^2*x2^4 + x1^4*x2^2");
  const Region ball = Region::ball({0, 0}, 6);
  for (auto [m1, m2] : {std::pair{0.5, 1.0}, std::pair{1.0, 4.0}, std::pair{4.0, 4.5}}) {
    const auto a = measure(v, m1, ball, MeasureMethod::MonteCarlo, 200'000, 11);
    const auto b = measure(v, m2, ball, MeasureMethod::MonteCarlo, 200'000, 12);
    EXPECT_LE(a.value, b.value + 3 * std::hypot(a.std_error, b.std_error));
  }
}

TEST(Measure, Scaling) {
  // V_2(x) = V(2x): |Omega(V_2) in B_R| = 2^-2 |Omega(V) in B_2R|
  const auto v = pot("x1^2*x2^2 + x1^2");
  const auto v2 = pot("(2*x1)^2*(2*x2)^2 + (2*x1)^2");
  const auto a = measure(v2, 1, Region::ball({0, 0}, 3), MeasureMethod::MonteCarlo, 400'000, 21);
  const auto b = measure(v, 1, Region::ball({0, 0}, 6), MeasureMethod::MonteCarlo, 400'000, 22);
  EXPECT_LE(std::abs(a.value - b.value / 4), 3 * std::hypot(a.std_error, b.std_error / 4));
}

TEST(LocalMeasure, WholePlaneAndStrip) {
  std::vector<double> x{3.0, -2.0};
  const auto whole = local_measure(pot("0"), 1, x, 1.0, 10'000, 1);
  EXPECT_DOUBLE_EQ(whole.value, kPi);
  std::vector<double> axis{0.0, 17.0};
  const auto strip = local_measure(pot("x1^2"), 1, axis, 1.0, 10'000, 1);
  EXPECT_NEAR(strip.value, kPi, 1e-12);
}

TEST(LocalMeasure, BoundedByBallAndMonotoneInRadius) {
  const auto v = pot("x1^2*x2^2");
  std::vector<double> x{10.0, 0.0};
  double previous = 0.0;
  for (double ell : {0.25, 0.5, 1.0, 2.0}) {
    const auto w = local_measure(v, 1, x, ell, 100'000, 9, MeasureMethod::GridQuadrature);
    EXPECT_LE(w.value, ball_volume(2, ell) * (1 + 1e-12));
    EXPECT_GE(w.value, previous);
    previous = w.value;
  }
  EXPECT_THROW(local_measure(v, 1, x, 0.0, 1000, 1), DomainError);
}

TEST(LocalMeasure, AxisPointDecays) {
  // Omega_1 near (10, 0) is the band |x2| < 1/|x1|: width about 2/10 across the unit ball.
  const auto v = pot("x1^2*x2^2");
  std::vector<double> x{10.0, 0.0};
  const auto w = local_measure(v, 1, x, 1.0, 400'000, 4);
  const double band = 2.0 * (std::log(11.0) - std::log(9.0));
  EXPECT_NEAR(w.value, band, 0.06);
  EXPECT_LE(w.value, 5.0 / 11.0);
}

TEST(DecayFit, HyperbolicCrossAlongAxis) {
  const auto v = pot("x1^2*x2^2");
  const std::vector<double> dir{1.0, 0.0}, t{5, 10, 20, 40};
  const auto fit = decay_fit(v, 1, 1.0, dir, t, 200'000, 1);
  EXPECT_GE(fit.exponent, 0.9);
  EXPECT_LE(fit.exponent, 1.2);
  ASSERT_EQ(fit.omegas.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_LE(fit.omegas[i], 1.25 * fit.constant / (t[i] + 1));
}

TEST(DecayFit, TranslationInvariantSets) {
  const std::vector<double> dir{0.0, 1.0}, t{5, 10, 20, 40};
  const auto strip = decay_fit(pot("x1^2"), 1, 1.0, dir, t, 50'000, 1);
  EXPECT_EQ(strip.exponent, 0.0);
  const auto whole = decay_fit(pot("0"), 1, 1.0, dir, t, 50'000, 1);
  EXPECT_EQ(whole.exponent, 0.0);
  EXPECT_DOUBLE_EQ(whole.constant, kPi);
  const auto wide = decay_fit(pot("0"), 1, 2.0, dir, t, 50'000, 1);
  EXPECT_DOUBLE_EQ(wide.constant, 4 * kPi);
}

TEST(DecayFit, RejectsPointsOutsideTheSublevelSet) {
  const std::vector<double> dir{1.0, 0.0}, t{1, 2};
  EXPECT_THROW(decay_fit(pot("x1^2"), 1, 1.0, dir, t, 10'000, 1), DomainError);
}

TEST(Thinness, HyperbolicCrossConverges) {
  const std::vector<double> radii{10, 20, 40, 80};
  const auto r = thinness(pot("x1^2*x2^2"), 1, 2, 1, radii);
  EXPECT_EQ(r.verdict, ThinnessVerdict::ConvergentEvidence);
  ASSERT_EQ(r.partial_integrals.size(), 4u);
  ASSERT_EQ(r.tail_ratios.size(), 2u);
  for (std::size_t j = 1; j < 4; ++j) EXPECT_GE(r.partial_integrals[j], r.partial_integrals[j - 1]);
  for (double q : r.tail_ratios) {
    EXPECT_GE(q, 0.0);
    EXPECT_LT(q, 0.7);
  }
}

TEST(Thinness, StripDiverges) {
  const std::vector<double> radii{10, 20, 40, 80};
  const auto r = thinness(pot("x1^2"), 1, 2, 1, radii);
  EXPECT_EQ(r.verdict, ThinnessVerdict::DivergentEvidence);
  // across the strip omega(a) = pi - seg(1 - |a|), seg(d) = acos d - d sqrt(1 - d^2);
  // the integral of omega^2 over -1 < a < 1 is 12.705974153013525 (adaptive quadrature)
  const double slope = (r.partial_integrals[3] - r.partial_integrals[2]) / 80.0;
  const double se = std::hypot(r.std_errors[3], r.std_errors[2]) / 80.0;
  EXPECT_NEAR(slope, 12.705974153013525, 4 * se) << "se " << se;
}

TEST(Thinness, EmptySublevelSet) {
  const std::vector<double> radii{10, 20, 40};
  const auto r = thinness(pot("1 + x1^2"), 0.5, 2, 1, radii);
  for (double i : r.partial_integrals) EXPECT_EQ(i, 0.0);
  EXPECT_EQ(r.verdict, ThinnessVerdict::ConvergentEvidence);
}

TEST(Thinness, Preconditions) {
  const auto v = pot("x1^2");
  const std::vector<double> two{10, 20}, unsorted{10, 40, 20}, ok{10, 20, 40};
  EXPECT_THROW(thinness(v, 1, 2, 1, two), DomainError);
  EXPECT_THROW(thinness(v, 1, 2, 1, unsorted), DomainError);
  EXPECT_THROW(thinness(v, 1, 0, 1, ok), DomainError);
  ThinnessOptions tiny;
  tiny.shell_samples = 1000;
  // disc of area 2 pi inside B_10: about 20 of 1000 samples hit
  EXPECT_THROW(thinness(pot("x1^2+x2^2"), 2, 2, 1, ok, tiny), BudgetError);
}

TEST(Thinness, Deterministic) {
  const std::vector<double> radii{5, 10, 20};
  ThinnessOptions opts;
  opts.shell_samples = 20'000;
  opts.max_points_per_shell = 50;
  opts.inner_budget = 1000;
  const auto a = thinness(pot("x1^2*x2^2"), 1, 2, 1, radii, opts);
  const auto b = thinness(pot("x1^2*x2^2"), 1, 2, 1, radii, opts);
  EXPECT_EQ(a.partial_integrals, b.partial_integrals);
  EXPECT_EQ(a.std_errors, b.std_errors);
  EXPECT_EQ(to_string(a.verdict), to_string(b.verdict));
}

TEST(Growth, WorkedExamples) {
  const std::vector<double> radii{1, 2, 4, 8};
  const auto radial = growth_check(pot("x1^2+x2^2"), radii, 200, 1);
  EXPECT_TRUE(radial.increasing);
  EXPECT_TRUE(radial.evidence_only);
  for (std::size_t i = 0; i < radii.size(); ++i) EXPECT_NEAR(radial.minima[i], radii[i] * radii[i], 1e-12);

  const auto cross = growth_check(pot("x1^2*x2^2"), radii, 200, 1);
  EXPECT_FALSE(cross.increasing);
  for (double m : cross.minima) EXPECT_EQ(m, 0.0);

  const auto zero = growth_check(pot("0"), radii, 200, 1);
  EXPECT_FALSE(zero.increasing);
  for (double m : zero.minima) EXPECT_EQ(m, 0.0);
}
