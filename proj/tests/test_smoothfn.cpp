#include <gtest/gtest.h>

#include <cmath>
#include <string>
#include <vector>

#include "finsum/error.hpp"
#include "finsum/smoothfn/parse.hpp"
#include "finsum/smoothfn/print.hpp"
#include "finsum/smoothfn/smooth_function.hpp"
#include "support/test_rng.hpp"

namespace sf = finsum::smoothfn;
using finsum::SmoothFunction;
using testsupport::Rng;

TEST(Parse, GrammarExamples) {
  const sf::Expression e1 = sf::parse("x^2 + 1");
  ASSERT_EQ(e1.root->kind, sf::NodeKind::Add);
  EXPECT_EQ(e1.root->lhs->kind, sf::NodeKind::Pow);
  EXPECT_EQ(e1.root->lhs->lhs->kind, sf::NodeKind::VarX);
  EXPECT_EQ(e1.root->lhs->rhs->kind, sf::NodeKind::Literal);
  EXPECT_EQ(e1.root->rhs->kind, sf::NodeKind::Literal);

  const sf::Expression e2 = sf::parse("exp(-x/5)");
  ASSERT_EQ(e2.root->kind, sf::NodeKind::Exp);
  ASSERT_EQ(e2.root->lhs->kind, sf::NodeKind::Div);
  EXPECT_EQ(e2.root->lhs->lhs->kind, sf::NodeKind::Neg);
  EXPECT_EQ(e2.root->lhs->lhs->lhs->kind, sf::NodeKind::VarX);
}

TEST(Parse, Precedence) {
  // power > unary minus > mul > add
  const sf::Expression e = sf::parse("-x^2");
  ASSERT_EQ(e.root->kind, sf::NodeKind::Neg);
  EXPECT_EQ(e.root->lhs->kind, sf::NodeKind::Pow);

  const sf::Expression m = sf::parse("1 + 2*x");
  ASSERT_EQ(m.root->kind, sf::NodeKind::Add);
  EXPECT_EQ(m.root->rhs->kind, sf::NodeKind::Mul);

  // Right-associative power.
  const sf::Expression p = sf::parse("x^2^3");
  ASSERT_EQ(p.root->kind, sf::NodeKind::Pow);
  EXPECT_EQ(p.root->rhs->kind, sf::NodeKind::Pow);

  const sf::Expression n = sf::parse("x^-2");
  ASSERT_EQ(n.root->kind, sf::NodeKind::Pow);
  EXPECT_EQ(n.root->rhs->kind, sf::NodeKind::Neg);
}

TEST(Parse, ErrorOffsets) {
  try {
    sf::parse("log(");
    FAIL() << "expected ParseError";
  } catch (const finsum::ParseError& e) {
    EXPECT_EQ(e.offset(), 4u);
  }

  try {
    sf::parse("x + foo");
    FAIL() << "expected ParseError";
  } catch (const finsum::ParseError& e) {
    EXPECT_EQ(e.offset(), 4u);
    EXPECT_NE(std::string(e.what()).find("unknown identifier 'foo'"), std::string::npos);
  }

  EXPECT_THROW(sf::parse("(x + 1"), finsum::ParseError);
  EXPECT_THROW(sf::parse("x 2"), finsum::ParseError);
  EXPECT_THROW(sf::parse("y + 1"), finsum::ParseError);
  EXPECT_NO_THROW(sf::parse_bivariate("y + 1"));
}

namespace {

sf::NodePtr random_ast(Rng& rng, int depth, bool allow_y) {
  const int pick = static_cast<int>(rng.integer(0, depth <= 0 ? 2 : 12));
  switch (pick) {
    case 0: return sf::lit(static_cast<double>(rng.integer(0, 9)));
    case 1: return sf::lit(rng.uniform(0.0, 4.0));
    case 2: return allow_y && rng.integer(0, 1) ? sf::var_y() : sf::var_x();
    case 3: return sf::binary(sf::NodeKind::Add, random_ast(rng, depth - 1, allow_y),
                              random_ast(rng, depth - 1, allow_y));
    case 4: return sf::binary(sf::NodeKind::Sub, random_ast(rng, depth - 1, allow_y),
                              random_ast(rng, depth - 1, allow_y));
    case 5: return sf::binary(sf::NodeKind::Mul, random_ast(rng, depth - 1, allow_y),
                              random_ast(rng, depth - 1, allow_y));
    case 6: return sf::binary(sf::NodeKind::Div, random_ast(rng, depth - 1, allow_y),
                              random_ast(rng, depth - 1, allow_y));
    case 7: return sf::binary(sf::NodeKind::Pow, random_ast(rng, depth - 1, allow_y),
                              random_ast(rng, depth - 1, allow_y));
    case 8: return sf::unary(sf::NodeKind::Neg, random_ast(rng, depth - 1, allow_y));
    case 9: return sf::unary(sf::NodeKind::Exp, random_ast(rng, depth - 1, allow_y));
    case 10: return sf::unary(sf::NodeKind::Log, random_ast(rng, depth - 1, allow_y));
    case 11: return sf::unary(sf::NodeKind::Sin, random_ast(rng, depth - 1, allow_y));
    default: return sf::unary(sf::NodeKind::Sqrt, random_ast(rng, depth - 1, allow_y));
  }
}

}  // namespace

TEST(Print, ParsePrintIdentityOnRandomAsts) {
  Rng rng(31415);
  for (int i = 0; i < 10000; ++i) {
    const sf::Expression e{random_ast(rng, static_cast<int>(rng.integer(1, 8)), i % 3 == 0)};
    const std::string text = sf::print(e);
    sf::Expression back;
    ASSERT_NO_THROW(back = sf::parse_bivariate(text)) << text;
    EXPECT_TRUE(sf::structurally_equal(e, back)) << text << " vs " << sf::print(back);
  }
}

TEST(Print, LiteralRoundTripIsExact) {
  const double v = 0.1 + 0.2;  // not representable as a short decimal
  const sf::Expression e{sf::lit(v)};
  const sf::Expression back = sf::parse(sf::print(e));
  EXPECT_EQ(back.root->value, v);
}

TEST(Derivatives, PolynomialExamples) {
  const SmoothFunction f = SmoothFunction::from_source("x^2", -10.0, 10.0);
  const std::vector<double> d = f.derivatives_at(3.0, 3);
  ASSERT_EQ(d.size(), 4u);
  EXPECT_DOUBLE_EQ(d[0], 9.0);
  EXPECT_DOUBLE_EQ(d[1], 6.0);
  EXPECT_DOUBLE_EQ(d[2], 2.0);
  EXPECT_DOUBLE_EQ(d[3], 0.0);
}

TEST(Derivatives, ExpAtZero) {
  const SmoothFunction f = SmoothFunction::from_source("exp(x)", -1.0, 1.0);
  const std::vector<double> d = f.derivatives_at(0.0, 4);
  for (int j = 0; j <= 4; ++j) EXPECT_DOUBLE_EQ(d[static_cast<std::size_t>(j)], 1.0);
}

TEST(Derivatives, LogClosedForms) {
  const SmoothFunction f = SmoothFunction::from_source("log(x)", 0.5, 10.0);
  const std::vector<double> d = f.derivatives_at(2.0, 2);
  EXPECT_DOUBLE_EQ(d[0], std::log(2.0));
  EXPECT_DOUBLE_EQ(d[1], 0.5);
  EXPECT_DOUBLE_EQ(d[2], -0.25);
}

TEST(Derivatives, HighOrderPolynomialIsExactlyZero) {
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    // Random polynomial of degree <= 6 written in expression form.
    std::string src = "0";
    const int deg = static_cast<int>(rng.integer(0, 6));
    for (int j = 0; j <= deg; ++j) {
      src += " + " + std::to_string(rng.integer(1, 5)) + "*x^" + std::to_string(j);
    }
    const SmoothFunction f(sf::parse(src), -5.0, 5.0);
    const double x = rng.uniform(-4.0, 4.0);
    const std::vector<double> d = f.derivatives_at(x, 12);
    for (int j = deg + 1; j <= 12; ++j)
      EXPECT_EQ(d[static_cast<std::size_t>(j)], 0.0) << src << " order " << j;
  }
}

TEST(Derivatives, MatchesFiniteDifferenceOnRandomExpressions) {
  Rng rng(777);
  int checked = 0;
  while (checked < 1000) {
    const sf::Expression e{random_ast(rng, 4, false)};
    const double x = rng.uniform(0.3, 3.0);
    try {
      const SmoothFunction f(e, 0.1, 4.0);
      const double h = 1e-6;
      const std::vector<double> d = f.derivatives_at(x, 3);
      const double scale = std::max({1.0, std::abs(d[1]), std::abs(d[0])});
      // Centered differences carry |f'''| h^2/6 truncation plus cancellation
      // roundoff; only compare where that intrinsic error is far below the
      // tolerance, otherwise the check would measure the difference scheme.
      const double fd_bound = std::abs(d[3]) * h * h / 6.0 + std::abs(d[0]) * 1e-16 / h;
      if (scale > 1e6 || fd_bound > 0.2e-6 * scale) continue;
      const double fd = (f.value(x + h) - f.value(x - h)) / (2.0 * h);
      EXPECT_NEAR(d[1], fd, 1e-6 * scale) << sf::print(e) << " at " << x;
      ++checked;
    } catch (const finsum::DomainError&) {
      continue;  // random tree wandered outside its numeric domain
    } catch (const finsum::CapacityError&) {
      continue;
    }
  }
}

TEST(Derivatives, DomainAndOrderErrors) {
  const SmoothFunction f = SmoothFunction::from_source("log(x)", 1.0, 2.0, 4);
  EXPECT_THROW(f.derivatives_at(0.5, 1), finsum::DomainError);
  EXPECT_THROW(f.derivatives_at(1.5, 5), finsum::Error);
  EXPECT_THROW(SmoothFunction::from_source("log(x-1)", 0.0, 2.0).value(1.0),
               finsum::DomainError);
}

TEST(Derivatives, PowRealRequiresPositiveBase) {
  const SmoothFunction f = SmoothFunction::from_source("x^2.5", -2.0, 2.0);
  EXPECT_NEAR(f.value(2.0), std::pow(2.0, 2.5), 1e-12);
  EXPECT_THROW(f.value(-1.0), finsum::DomainError);
}

TEST(GoodCheck, SufficientCondition) {
  const SmoothFunction sq = SmoothFunction::from_source("x^2", 0.0, 10.0);
  EXPECT_TRUE(sq.is_good_on(0.0, 10.0).good);

  const SmoothFunction rt1 = SmoothFunction::from_source("sqrt(x)", 1.0, 4.0);
  EXPECT_TRUE(rt1.is_good_on(1.0, 4.0).good);

  const SmoothFunction rt0 = SmoothFunction::from_source("sqrt(x)", 0.0, 1.0, 1);
  const finsum::GoodCheck chk = rt0.is_good_on(0.0, 1.0);
  EXPECT_FALSE(chk.good);
  EXPECT_FALSE(chk.reason.empty());

  const SmoothFunction flat = SmoothFunction::from_source("x", 0.0, 1.0, 0);
  EXPECT_FALSE(flat.is_good_on(0.0, 1.0).good);
}

TEST(Bivariate, PartialsAndDomain) {
  const finsum::BivariateFunction f =
      finsum::BivariateFunction::from_source("x*y + x^2", 0.0, 3.0, 0.0, 2.0);
  const sf::Jet11 p = f.partials(2.0, 1.5);
  EXPECT_DOUBLE_EQ(p.f, 2.0 * 1.5 + 4.0);
  EXPECT_DOUBLE_EQ(p.fx, 1.5 + 4.0);
  EXPECT_DOUBLE_EQ(p.fy, 2.0);
  EXPECT_DOUBLE_EQ(p.fxy, 1.0);
  EXPECT_THROW(f.partials(5.0, 1.0), finsum::DomainError);
}

TEST(Bivariate, MixedPartialOfProductOfFunctions) {
  const finsum::BivariateFunction f =
      finsum::BivariateFunction::from_source("sin(x)*cos(y)", 0.0, 3.0, 0.0, 3.0);
  const sf::Jet11 p = f.partials(1.0, 2.0);
  EXPECT_NEAR(p.f, std::sin(1.0) * std::cos(2.0), 1e-15);
  EXPECT_NEAR(p.fx, std::cos(1.0) * std::cos(2.0), 1e-15);
  EXPECT_NEAR(p.fy, -std::sin(1.0) * std::sin(2.0), 1e-15);
  EXPECT_NEAR(p.fxy, -std::cos(1.0) * std::sin(2.0), 1e-15);
}

TEST(Tape, NestingCapacity) {
  std::string deep = "x";
  for (int i = 0; i < 80; ++i) deep = "sin(" + deep + ")";
  EXPECT_NO_THROW(sf::compile(sf::parse(deep)));  // unary chain needs depth 1

  std::string wide = "x";
  for (int i = 0; i < 80; ++i) wide = "(" + wide + ") + x";
  // Left-leaning additions also stay shallow; force depth with right nesting.
  std::string right = "x";
  for (int i = 0; i < 80; ++i) right = "x + (" + right + ")";
  EXPECT_THROW(sf::compile(sf::parse(right)), finsum::CapacityError);
  EXPECT_NO_THROW(sf::compile(sf::parse(wide)));
}
