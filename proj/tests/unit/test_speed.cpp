#include <gtest/gtest.h>

#include <chrono>
#include <cmath>

#include "oracles.hpp"
#include "singfront/error.hpp"
#include "singfront/speed.hpp"

using namespace singfront;

namespace {
ProblemSpec example1() { return make_spec(2, "0", "u+1", "u^2*(1-u)"); }
ProblemSpec example2() { return make_spec(1, "u", "1-u", "u*(1-u)"); }
}  // namespace

TEST(CriticalSpeed, ExampleOneFromBounds) {
  const auto start = std::chrono::steady_clock::now();
  const SpeedResult r = critical_speed(example1());
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  EXPECT_NEAR(r.c_star, 3.0 / std::cbrt(4.0), 1e-5);
  EXPECT_NEAR(r.c_star, 1.8898816, 1e-5);
  EXPECT_TRUE(r.from_bounds);
  EXPECT_EQ(r.iterations, 0);
  EXPECT_LT(secs, 1.0);
}

TEST(CriticalSpeed, Fisher) {
  const SpeedResult r = critical_speed(make_spec(1, "0", "1", "u*(1-u)"));
  EXPECT_NEAR(r.c_star, 2.0, 1e-8);
  EXPECT_NEAR(r.bounds.lower, 2.0, 1e-12);
}

TEST(CriticalSpeed, DriftShiftsSpeed) {
  const SpeedResult r = critical_speed(make_spec(1, "0.5", "1", "u*(1-u)"));
  EXPECT_NEAR(r.c_star, 2.5, 1e-8);
}

TEST(CriticalSpeed, ExampleTwoInsideBounds) {
  const ProblemSpec s = example2();
  const SpeedResult r = critical_speed(s);
  EXPECT_NEAR(r.bounds.lower, 2.0, 1e-8);
  EXPECT_NEAR(r.bounds.upper, 5.0, 1e-8);
  EXPECT_GT(r.c_star, 2.0);
  EXPECT_LT(r.c_star, 5.0);
  EXPECT_FALSE(r.from_bounds);
  // z = phi u (1 - u) with phi the golden ratio solves the problem at c = sqrt 5
  EXPECT_NEAR(r.c_star, std::sqrt(5.0), 1e-5);

  const SpeedResult fine = critical_speed(s, s.numerics.tol_c / 10.0);
  EXPECT_NEAR(fine.c_star, r.c_star, 1e-5);
  EXPECT_NEAR(fine.c_star, std::sqrt(5.0), 2e-6);
}

TEST(CriticalSpeed, BracketHistoryNests) {
  const SpeedResult r = critical_speed(example2());
  ASSERT_FALSE(r.bracket_history.empty());
  double lo = r.bounds.lower - 1e-12, hi = r.bounds.upper + 1e-12;
  for (const auto& [l, h] : r.bracket_history) {
    EXPECT_GE(l, lo);
    EXPECT_LE(h, hi);
    EXPECT_LT(l, h);
    lo = l;
    hi = h;
  }
  EXPECT_LT(hi - lo, r.tolerance);
  ASSERT_TRUE(r.above);
  EXPECT_TRUE(r.above->connects());
  ASSERT_TRUE(r.below);
  EXPECT_FALSE(r.below->connects());
}

TEST(CriticalSpeed, Idempotent) {
  const ProblemSpec s = example2();
  const SpeedResult a = critical_speed(s);
  const SpeedResult b = critical_speed(s);
  EXPECT_EQ(a.c_star, b.c_star);
  EXPECT_EQ(a.bracket_history, b.bracket_history);
}

TEST(CriticalSpeed, GalleryWithinBounds) {
  for (const auto& e : oracle::gallery()) {
    const SpeedResult r = critical_speed(make_spec(e.alpha, e.f, e.g, e.h));
    EXPECT_GE(r.c_star, r.bounds.lower - r.tolerance) << e.name;
    EXPECT_LE(r.c_star, r.bounds.upper + r.tolerance) << e.name;
  }
}

TEST(CriticalSpeed, InfiniteH0) {
  EXPECT_THROW(critical_speed(make_spec(1, "0", "1", "sqrt(u)*(1-u)")), ExistenceFails);
}

TEST(Admissible, Examples) {
  const ProblemSpec s = example2();
  const Admissibility six = admissible(s, 6.0);
  EXPECT_TRUE(six.admissible);
  ASSERT_TRUE(six.certificate);
  EXPECT_NEAR(six.certificate->slope, 1.25, 1e-9);
  ASSERT_TRUE(six.trajectory);

  const Admissibility three = admissible(s, 3.0);
  EXPECT_TRUE(three.admissible);
  EXPECT_FALSE(three.certificate);

  const Admissibility one = admissible(s, 1.0);
  EXPECT_FALSE(one.admissible);
  EXPECT_EQ(one.reason, NoSolutionReason::Subcritical);

  const Admissibility sq = admissible(make_spec(1, "0", "1", "sqrt(u)*(1-u)"), 5.0);
  EXPECT_FALSE(sq.admissible);
  EXPECT_EQ(sq.reason, NoSolutionReason::LimitInfinite);
}

TEST(Admissible, HalfLineAroundCStar) {
  const ProblemSpec s = example2();
  const double c = critical_speed(s).c_star;
  for (double dc : {1e-3, 1e-2, 0.1, 1.0}) {
    EXPECT_TRUE(admissible(s, c + dc).admissible) << dc;
    EXPECT_FALSE(admissible(s, c - dc).admissible) << dc;
  }
}
