#include <gtest/gtest.h>

#include <cmath>
#include <optional>
#include <random>

#include "singfront/error.hpp"
#include "singfront/expr.hpp"

using singfront::Expr;
using singfront::Op;
using singfront::parse;

TEST(Expr, EvaluatesArithmetic) {
  EXPECT_DOUBLE_EQ(parse("u^2*(1-u)")(0.5), 0.125);
  EXPECT_DOUBLE_EQ(parse("1-u")(1.0), 0.0);
  EXPECT_DOUBLE_EQ(parse("sqrt(u)*(1-u)")(0.25), 0.375);
  EXPECT_DOUBLE_EQ(parse("u+1")(0.0), 1.0);
  EXPECT_DOUBLE_EQ(parse("u*(1-u)")(0.5), 0.25);
  EXPECT_DOUBLE_EQ(parse("u^0.5")(0.0), 0.0);
  EXPECT_DOUBLE_EQ(singfront::eval(parse("3*u"), 2.0), 6.0);
}

TEST(Expr, Precedence) {
  EXPECT_DOUBLE_EQ(parse("2+3*u")(1.0), 5.0);
  EXPECT_DOUBLE_EQ(parse("(2+3)*u")(1.0), 5.0);
  EXPECT_DOUBLE_EQ(parse("2^3^2")(0.0), 512.0);
  EXPECT_DOUBLE_EQ(parse("-u^2")(3.0), -9.0);
  EXPECT_DOUBLE_EQ(parse("2^-1")(0.0), 0.5);
  EXPECT_DOUBLE_EQ(parse("8/2/2")(0.0), 2.0);
  EXPECT_DOUBLE_EQ(parse("1-2-3")(0.0), -4.0);
  EXPECT_DOUBLE_EQ(parse("--u")(2.0), 2.0);
}

TEST(Expr, Functions) {
  EXPECT_DOUBLE_EQ(parse("exp(0)")(0.0), 1.0);
  EXPECT_DOUBLE_EQ(parse("log(exp(u))")(0.7), 0.7);
  EXPECT_DOUBLE_EQ(parse("abs(u-1)")(0.25), 0.75);
  EXPECT_DOUBLE_EQ(parse("sin(u)^2+cos(u)^2")(0.3), std::pow(std::sin(0.3), 2) + std::pow(std::cos(0.3), 2));
  EXPECT_DOUBLE_EQ(parse("pow(u, 3)")(2.0), 8.0);
  EXPECT_DOUBLE_EQ(parse("1.5e-1 + 2E1")(0.0), 20.15);
}

TEST(Expr, SyntaxErrorsCarryPosition) {
  try {
    parse("2u");
    FAIL() << "implicit multiplication accepted";
  } catch (const singfront::SyntaxError& e) {
    EXPECT_EQ(e.position(), 1u);
  }
  EXPECT_THROW(parse("(u+1"), singfront::SyntaxError);
  EXPECT_THROW(parse("u+1)"), singfront::SyntaxError);
  EXPECT_THROW(parse(""), singfront::SyntaxError);
  EXPECT_THROW(parse("u*"), singfront::SyntaxError);
  EXPECT_THROW(parse("pow(u)"), singfront::SyntaxError);
  EXPECT_THROW(parse("1.2.3"), singfront::SyntaxError);
}

TEST(Expr, UnknownIdentifier) {
  try {
    parse("u + tan(u)");
    FAIL() << "tan accepted";
  } catch (const singfront::UnknownIdentifier& e) {
    EXPECT_EQ(e.position(), 4u);
  }
  EXPECT_THROW(parse("x"), singfront::UnknownIdentifier);
}

TEST(Expr, DomainErrorsAreReported) {
  try {
    parse("1 + log(u)")(0.0);
    FAIL() << "log(0) accepted";
  } catch (const singfront::EvalDomainError& e) {
    EXPECT_EQ(e.input(), 0.0);
    EXPECT_NE(e.subexpression().find("log"), std::string::npos);
  }
  EXPECT_THROW(parse("1/u")(0.0), singfront::EvalDomainError);
  EXPECT_THROW(parse("u/u")(0.0), singfront::EvalDomainError);
  EXPECT_THROW(parse("(u-1)^0.5")(0.5), singfront::EvalDomainError);
  EXPECT_THROW(parse("sqrt(u-1)")(0.5), singfront::EvalDomainError);
  EXPECT_DOUBLE_EQ(parse("(u-1)^2")(0.5), 0.25);
}

TEST(Expr, ConstantDetection) {
  EXPECT_TRUE(parse("3").is_constant());
  EXPECT_FALSE(parse("u").is_constant());
  EXPECT_TRUE(Expr().is_constant());
  EXPECT_EQ(Expr()(0.3), 0.0);
}

namespace {

Expr random_expr(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 1 ? 1 : 12);
  std::uniform_real_distribution<double> value(-5.0, 5.0);
  switch (pick(rng)) {
    case 0: return Expr::constant(value(rng));
    case 1: return Expr::variable();
    case 2: return Expr::unary(Op::Negate, random_expr(rng, depth - 1));
    case 3: return Expr::binary(Op::Add, random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    case 4: return Expr::binary(Op::Sub, random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    case 5: return Expr::binary(Op::Mul, random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    case 6: return Expr::binary(Op::Div, random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    case 7: {
      std::uniform_int_distribution<int> exponent(-3, 3);
      return Expr::binary(Op::Pow, random_expr(rng, depth - 1), Expr::constant(exponent(rng) * 0.5));
    }
    case 8: return Expr::unary(Op::Sqrt, Expr::unary(Op::Abs, random_expr(rng, depth - 1)));
    case 9: return Expr::unary(Op::Exp, Expr::unary(Op::Sin, random_expr(rng, depth - 1)));
    case 10: return Expr::unary(Op::Log, random_expr(rng, depth - 1));
    case 11: return Expr::unary(Op::Cos, random_expr(rng, depth - 1));
    default: return Expr::unary(Op::Abs, random_expr(rng, depth - 1));
  }
}

std::optional<double> try_eval(const Expr& e, double u) {
  try {
    return e(u);
  } catch (const singfront::EvalDomainError&) {
    return std::nullopt;
  }
}

}  // namespace

TEST(Expr, PrintParseRoundTrip) {
  std::mt19937_64 rng(20240917);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int evaluated = 0;
  for (int i = 0; i < 1000; ++i) {
    const Expr e = random_expr(rng, 6);
    const std::string text = e.to_string();
    const Expr back = parse(text);
    for (int k = 0; k < 5; ++k) {
      const double u = unit(rng);
      const auto a = try_eval(e, u);
      const auto b = try_eval(back, u);
      ASSERT_EQ(a.has_value(), b.has_value()) << text << " at u = " << u;
      if (a) {
        ASSERT_EQ(*a, *b) << text << " at u = " << u;
        ++evaluated;
      }
    }
    EXPECT_EQ(back.to_string(), text);
  }
  EXPECT_GT(evaluated, 2000);
}

TEST(Expr, DeterministicEvaluation) {
  const Expr e = parse("sqrt(u)*exp(-u)/(1+u^2.5)");
  for (double u = 0.0; u <= 1.0; u += 0.01) EXPECT_EQ(e(u), e(u));
}
