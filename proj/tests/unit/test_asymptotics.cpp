#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "singfront/asymptotics.hpp"
#include "singfront/error.hpp"

using namespace singfront;

TEST(SingularLimit, ZeroEnd) {
  const SingularLimit a = singular_limit_zero(make_spec(2, "0", "u+1", "u^2*(1-u)"));
  EXPECT_TRUE(a.finite());
  EXPECT_NEAR(a.value, 1.0, 1e-10);
  EXPECT_EQ(a.provenance, Provenance::Extrapolated);
  EXPECT_EQ(a.diagnostics.size(), 31u);

  const SingularLimit b = singular_limit_zero(make_spec(1, "0", "1", "u^2*(1-u)"));
  EXPECT_EQ(b.value, 0.0);

  const SingularLimit c = singular_limit_zero(make_spec(2, "0", "1", "u*(1-u)"));
  EXPECT_FALSE(c.finite());
  EXPECT_TRUE(std::isinf(c.value) && c.value > 0);

  const SingularLimit d = singular_limit_zero(make_spec(1, "0", "1", "sqrt(u)*(1-u)"));
  EXPECT_FALSE(d.finite());
}

TEST(SingularLimit, LadderMatchesDirectSampling) {
  const ProblemSpec s = make_spec(1.5, "0", "1", "u^1.5*(2+u)*(1-u)");
  const SingularLimit l = singular_limit_zero(s);
  for (std::size_t i = 0; i < l.diagnostics.size(); ++i) {
    const double u = std::ldexp(1.0, -static_cast<int>(i) - 10);
    EXPECT_DOUBLE_EQ(l.diagnostics[i], s.h(u) / std::pow(u, 1.5));
  }
  EXPECT_NEAR(l.value, 2.0, 1e-9);
}

TEST(SingularLimit, OneEnd) {
  EXPECT_NEAR(singular_limit_one(make_spec(1, "0", "1", "u*(1-u)")).value, -1.0, 1e-10);
  EXPECT_EQ(singular_limit_one(make_spec(1, "0", "1", "u^2*(1-u)^2")).value, 0.0);
  const SingularLimit inf = singular_limit_one(make_spec(2, "0", "1", "u*(1-u)"));
  EXPECT_TRUE(std::isinf(inf.value) && inf.value < 0);
  EXPECT_EQ(inf.side, EndSide::One);
}

TEST(SingularLimit, OscillationIsNoLimit) {
  EXPECT_THROW(singular_limit_zero(make_spec(1, "0", "1", "u*(1.5+sin(1/u))*(1-u)")), NoLimit);
}

TEST(SingularLimit, OverrideWins) {
  ProblemSpec s = make_spec(1, "0", "1", "u*(1-u)");
  s.h0_alpha_override = 1.0;
  SingularLimit l = singular_limit_zero(s);
  EXPECT_EQ(l.provenance, Provenance::AnalyticOverride);
  EXPECT_EQ(l.value, 1.0);
  EXPECT_FALSE(l.warning);

  s.h0_alpha_override = 1.5;
  l = singular_limit_zero(s);
  EXPECT_EQ(l.value, 1.5);
  EXPECT_TRUE(l.warning);

  s.h1_alpha_override = -std::numeric_limits<double>::infinity();
  EXPECT_TRUE(std::isinf(singular_limit_one(s).value));
}

TEST(MMin, Examples) {
  MMin m = m_min(1, 2, 1);
  EXPECT_DOUBLE_EQ(m.argmin, 1.0);
  EXPECT_NEAR(m.min_value, 0.0, 1e-15);

  m = m_min(2, 3 * std::pow(4.0, -1.0 / 3.0), 1);
  EXPECT_NEAR(m.argmin, std::cbrt(2.0), 1e-14);
  EXPECT_NEAR(m.min_value, 0.0, 1e-14);

  m = m_min(1, -1, 0.5);
  EXPECT_EQ(m.argmin, 0.0);
  EXPECT_EQ(m.min_value, 0.5);
}

TEST(MMin, RandomSamplesAgainstDenseGrid) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> A(1e-3, 4.0), B(-5.0, 5.0), C(0.0, 5.0), T(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const double a = A(rng), b = B(rng), g = C(rng);
    const MMin m = m_min(a, b, g);
    const double t_max = std::max(1.0, 2.0 * std::fabs(b));
    EXPECT_NEAR(m.min_value, oracle::dense_min(a, b, g, t_max, 4001), 1e-8 * std::max(1.0, g));
    for (int k = 0; k < 100; ++k) {
      const double t = 3.0 * t_max * T(rng);
      ASSERT_LE(m.min_value, m_function(a, b, g, t) + 1e-12 * std::max(1.0, g));
    }
    const double threshold = (a + 1.0) * std::pow(g / std::pow(a, a), 1.0 / (a + 1.0)) - b;
    if (std::fabs(m.min_value) > 1e-12 && std::fabs(threshold) > 1e-12) {
      EXPECT_EQ(m.min_value > 0, threshold > 0) << a << ' ' << b << ' ' << g;
    }
  }
}

TEST(EtaRoots, Examples) {
  EtaRoots r = eta_roots(1, 3, 1);
  ASSERT_EQ(r.roots.size(), 2u);
  EXPECT_NEAR(r.roots[0], (3 - std::sqrt(5.0)) / 2, 1e-12);
  EXPECT_NEAR(r.roots[1], (3 + std::sqrt(5.0)) / 2, 1e-12);

  r = eta_roots(1, 5 / std::sqrt(6.0), 1);
  ASSERT_EQ(r.roots.size(), 2u);
  EXPECT_NEAR(r.roots[0], std::sqrt(2.0 / 3.0), 1e-12);
  EXPECT_NEAR(r.roots[1], std::sqrt(1.5), 1e-12);

  r = eta_roots(1, 2, 0);
  ASSERT_EQ(r.roots.size(), 2u);
  EXPECT_EQ(r.roots[0], 0.0);
  EXPECT_EQ(r.roots[1], 2.0);

  EXPECT_TRUE(eta_roots(1, 1, 1).roots.empty());
  r = eta_roots(1, 2, 1);
  ASSERT_EQ(r.roots.size(), 1u);
  EXPECT_NEAR(r.roots[0], 1.0, 1e-12);
}

TEST(EtaRoots, RandomResidualsAndSignPattern) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> A(1e-3, 4.0), B(-5.0, 5.0), C(0.0, 5.0);
  for (int i = 0; i < 10000; ++i) {
    const double a = A(rng), b = B(rng), g = C(rng);
    const EtaRoots r = eta_roots(a, b, g);
    const double scale = std::max({1.0, g, std::pow(std::fabs(b), a + 1.0)});
    for (double t : r.roots) {
      ASSERT_GE(t, 0.0);
      ASSERT_LE(std::fabs(m_function(a, b, g, t)), 1e-10 * scale) << a << ' ' << b << ' ' << g;
    }
    const double band = 1e-12 * std::max(1.0, g);
    if (r.min_value > band) {
      EXPECT_TRUE(r.roots.empty());
    } else if (r.min_value < -band) {
      EXPECT_EQ(r.roots.size(), 2u);
    } else {
      EXPECT_EQ(r.roots.size(), 1u);
    }
    EXPECT_EQ(r.roots.empty(), r.min_value > band);
  }
}

TEST(EtaRoots, QuadraticOracle) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> B(0.0, 6.0), C(0.0, 5.0);
  for (int i = 0; i < 1000; ++i) {
    const double b = B(rng), g = C(rng);
    const auto expect = oracle::quadratic_roots(b, g);
    const EtaRoots r = eta_roots(1, b, g);
    if (expect.empty() || expect[1] - expect[0] < 1e-5) continue;
    ASSERT_EQ(r.roots.size(), 2u);
    EXPECT_NEAR(r.roots[0], expect[0], 1e-10);
    EXPECT_NEAR(r.roots[1], expect[1], 1e-10);
  }
}

TEST(Eta1Slope, Fisher) {
  const ProblemSpec s = make_spec(1, "0", "1", "u*(1-u)");
  const double c = 5 / std::sqrt(6.0);
  const EndSlope e = eta1_slope(1, c, s);
  EXPECT_FALSE(e.degenerate);
  EXPECT_NEAR(e.slope, (-c + std::sqrt(c * c + 4)) / 2, 1e-12);
  EXPECT_NEAR(e.slope, 0.408248, 1e-6);
  // The exact solution has |z'(1)| = sqrt(2/3)/2.
  EXPECT_NEAR(e.slope, std::sqrt(2.0 / 3.0) / 2, 1e-12);
}

TEST(Eta1Slope, DegenerateAndInfinite) {
  const ProblemSpec s = make_spec(1, "0", "1", "u*(1-u)^2");
  const EndSlope e = eta1_slope(1, 1.0, s);
  EXPECT_TRUE(e.degenerate);
  EXPECT_EQ(e.slope, 0.0);
  const EndSlope back = eta1_slope(1, -1.0, s);
  EXPECT_EQ(back.slope, 1.0);
  EXPECT_THROW(eta1_slope(2, 3 / std::cbrt(4.0), make_spec(2, "0", "u+1", "u^2*(1-u)")),
               LimitInfinite);
}

TEST(Eta1Slope, RootSatisfiesPolynomial) {
  const ProblemSpec s = make_spec(1.7, "u", "2-u", "u^1.7*(1-u)^1.7*(3-u)");
  const double h1 = singular_limit_one(s).value;
  EXPECT_NEAR(h1, -2.0, 1e-9);
  for (double c : {0.5, 1.0, 4.0}) {
    const double sl = eta1_slope(1.7, c, s, h1).slope;
    const double b = c * 1.0 - 1.0;
    EXPECT_NEAR(std::pow(sl, 2.7) + b * std::pow(sl, 1.7) + h1, 0.0, 1e-12);
  }
}

TEST(Extrapolation, AitkenRecoversGeometricTail) {
  std::vector<double> r;
  for (int k = 10; k <= 40; ++k) r.push_back(3.0 + 0.5 * std::ldexp(1.0, -k));
  // tail already below the rounding floor: the last rung is returned
  EXPECT_NEAR(extrapolate_ladder(r, +1), 3.0, 1e-12);
  std::vector<double> slow;
  for (int k = 0; k <= 30; ++k) slow.push_back(3.0 + 0.5 * std::pow(0.7, k));
  EXPECT_GT(std::fabs(slow.back() - 3.0), 1e-6);
  EXPECT_NEAR(extrapolate_ladder(slow, +1), 3.0, 1e-13);
  std::vector<double> grow;
  for (int k = 10; k <= 40; ++k) grow.push_back(std::ldexp(1.0, k));
  EXPECT_TRUE(std::isinf(extrapolate_ladder(grow, +1)));
}
