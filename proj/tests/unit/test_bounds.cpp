#include <gtest/gtest.h>

#include <cmath>

#include "singfront/bounds.hpp"
#include "singfront/error.hpp"

using namespace singfront;

namespace {
const double kCube = 3.0 / std::cbrt(4.0);
}

TEST(MeanValueCurve, Examples) {
  auto g = [](double u) { return u + 1.0; };
  auto h = [](double u) { return u * (1.0 - u); };
  EXPECT_NEAR(mean_value_curve(g, 0.5, 0.0), 1.25, 1e-12);
  EXPECT_NEAR(mean_value_curve(h, 1.0, 1.0), 0.5, 1e-10);
  EXPECT_NEAR(mean_value_curve(g, 1e-6, 0.0), 1.0 + 5e-7, 1e-13);
  EXPECT_NEAR(mean_value_curve(h, 0.4, 1.0), 1.0 - 0.2, 1e-10);
  auto h2 = [](double u) { return u * u * (1.0 - u); };
  EXPECT_NEAR(mean_value_curve(h2, 0.6, 2.0), 1.0 - 0.3, 1e-10);
}

TEST(MeanValueCurve, DivergentIntegrand) {
  auto h = [](double u) { return std::sqrt(u) * (1.0 - u); };
  EXPECT_THROW(mean_value_curve(h, 0.5, 1.0), SingularDivergence);
  EXPECT_THROW(mean_value_curve(h, 0.0, 0.0), Error);
}

TEST(Bounds, ExampleOne) {
  const SpeedBounds b = estimate(make_spec(2, "0", "u+1", "u^2*(1-u)"));
  EXPECT_NEAR(b.F0, 0.0, 1e-12);
  EXPECT_NEAR(b.G0, 1.0, 1e-12);
  EXPECT_NEAR(b.H0, 1.0, 1e-10);
  EXPECT_NEAR(b.h0_alpha, 1.0, 1e-10);
  EXPECT_NEAR(b.lower, kCube, 1e-9);
  EXPECT_NEAR(b.upper, kCube, 1e-9);
  EXPECT_TRUE(b.coincide(1e-8));
}

TEST(Bounds, ExampleTwo) {
  const SpeedBounds b = estimate(make_spec(1, "u", "1-u", "u*(1-u)"));
  EXPECT_NEAR(b.F0, 0.5, 1e-10);
  EXPECT_NEAR(b.G0, 0.5, 1e-10);
  EXPECT_NEAR(b.H0, 1.0, 1e-10);
  EXPECT_NEAR(b.lower, 2.0, 1e-8);
  EXPECT_NEAR(b.upper, 5.0, 1e-8);
  EXPECT_NEAR(b.F0_at, 1.0, 1e-9);
  EXPECT_NEAR(b.G0_at, 1.0, 1e-9);
}

TEST(Bounds, Fisher) {
  const SpeedBounds b = estimate(make_spec(1, "0", "1", "u*(1-u)"));
  EXPECT_NEAR(b.F0, 0.0, 1e-14);
  EXPECT_NEAR(b.G0, 1.0, 1e-14);
  EXPECT_NEAR(b.H0, 1.0, 1e-12);
  EXPECT_NEAR(b.lower, 2.0, 1e-12);
  EXPECT_NEAR(b.upper, 2.0, 1e-8);
  // f(0) + 2 sqrt(h'(0))
  EXPECT_NEAR(b.lower, 0.0 + 2.0 * std::sqrt(1.0), 1e-12);
}

TEST(Bounds, InteriorExtremum) {
  // H(u) = 1 + u/2 - 2u^2/3 peaks at u = 3/8.
  const SpeedBounds b = estimate(make_spec(1, "0", "1", "u*(1-u)*(1+2*u)"));
  EXPECT_NEAR(b.H0_at, 0.375, 1e-4);
  EXPECT_NEAR(b.H0, 1.0 + 3.0 / 16.0 - 2.0 * 9.0 / 64.0 / 3.0, 1e-10);
  EXPECT_NEAR(b.upper, 2.0 * std::sqrt(b.H0), 1e-9);
  EXPECT_LE(b.lower, b.upper + 1e-9);
}

TEST(Bounds, GridRefinementStable) {
  ProblemSpec s = make_spec(1.5, "u^2", "1+sin(3*u)", "u^1.5*(1-u)*(2-cos(5*u))");
  const SpeedBounds a = estimate(s);
  s.numerics.bound_grid = 2 * s.numerics.bound_grid - 1;
  const SpeedBounds b = estimate(s);
  EXPECT_NEAR(a.F0, b.F0, 1e-6);
  EXPECT_NEAR(a.G0, b.G0, 1e-6);
  EXPECT_NEAR(a.H0, b.H0, 1e-6);
}

TEST(Bounds, InfiniteLimit) {
  const ProblemSpec s = make_spec(1, "0", "1", "sqrt(u)*(1-u)");
  EXPECT_THROW(estimate(s), ExistenceFails);
  EXPECT_THROW(constants(s), SingularDivergence);
}

TEST(Bounds, LowerBoundFormula) {
  EXPECT_NEAR(lower_bound(1, 0, 1, 1), 2.0, 1e-15);
  EXPECT_NEAR(lower_bound(2, 0, 1, 1), kCube, 1e-15);
  EXPECT_NEAR(lower_bound(1, 0.5, 1, 1), 2.5, 1e-15);
}

TEST(Certificate, Examples) {
  const ProblemSpec ex2 = make_spec(1, "u", "1-u", "u*(1-u)");
  const auto six = certify_existence(ex2, 6.0);
  ASSERT_TRUE(six);
  EXPECT_NEAR(six->slope, 1.25, 1e-9);
  EXPECT_NEAR(six->m_value, -0.5625, 1e-9);
  EXPECT_FALSE(certify_existence(ex2, 4.0));

  const auto fisher = certify_existence(make_spec(1, "0", "1", "u*(1-u)"), 3.0);
  ASSERT_TRUE(fisher);
  EXPECT_NEAR(fisher->slope, 1.5, 1e-12);
  EXPECT_NEAR(fisher->m_value, -1.25, 1e-12);
}
