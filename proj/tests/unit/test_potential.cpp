#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <functional>

#include "speclab/error.hpp"
#include "speclab/potential.hpp"
#include "test_support.hpp"

using speclab::ParseError;
using speclab::PotentialExpr;
using speclab::parse_potential;

namespace {

double eval(const PotentialExpr& v, std::initializer_list<double> x) {
  std::vector<double> p(x);
  return v.evaluate(p);
}

std::size_t error_position(const std::string& text, int nu) {
  try {
    parse_potential(text, nu);
  } catch (const ParseError& e) {
    return e.position();
  }
  ADD_FAILURE() << "no ParseError for '" << text << "'";
  return std::string::npos;
}

struct CorpusEntry {
  const char* text;
  std::function<double(double, double, double)> direct;
};

const std::vector<CorpusEntry>& corpus() {
  static const std::vector<CorpusEntry> entries = {
      {"x1^2*x2^2", [](double a, double b, double) { return a * a * b * b; }},
      {"x1^2+x2^2", [](double a, double b, double) { return a * a + b * b; }},
      {"x1^2*x2^4 + x1^4*x2^2", [](double a, double b, double) { return a * a * b * b * b * b + a * a * a * a * b * b; }},
      {"x1*(x1+x2)", [](double a, double b, double) { return a * (a + b); }},
      {"x1 - x2 - x3", [](double a, double b, double c) { return (a - b) - c; }},
      {"2*x1^3 - 0.5*x3", [](double a, double, double c) { return 2 * a * a * a - 0.5 * c; }},
      {"-x1^2", [](double a, double, double) { return -(a * a); }},
      {"(-x1)^2", [](double a, double, double) { return a * a; }},
      {"--x2", [](double, double b, double) { return b; }},
      {"exp(-x1^2 - x2^2)", [](double a, double b, double) { return std::exp(-a * a - b * b); }},
      {"abs(x1*x2*x3)", [](double a, double b, double c) { return std::abs(a * b * c); }},
      {"abs(x1) + exp(x2) * 3", [](double a, double b, double) { return std::abs(a) + std::exp(b) * 3; }},
      {"x1^2^2", [](double a, double, double) { return a * a * a * a; }},
      {"(x1+x2)^3", [](double a, double b, double) { return (a + b) * (a + b) * (a + b); }},
      {"1.5e-1*x3^0 + 4", [](double, double, double) { return 0.15 + 4; }},
      {"x1*x2 + x2*x3 + x3*x1", [](double a, double b, double c) { return a * b + b * c + c * a; }},
      {"(x1 - 1)^2 * (x2 + 2)^2", [](double a, double b, double) { return (a - 1) * (a - 1) * (b + 2) * (b + 2); }},
      {"0", [](double, double, double) { return 0.0; }},
      {"x3 * (x1 - x2 * (x3 + 1))", [](double a, double b, double c) { return c * (a - b * (c + 1)); }},
      {"  x1 *x1* x1 -x2  ", [](double a, double b, double) { return a * a * a - b; }},
  };
  return entries;
}

}  // namespace

TEST(Potential, ParsesTheWorkedExamples) {
  const auto v = parse_potential("x1^2*x2^2", 2);
  EXPECT_EQ(v.dimension(), 2);
  EXPECT_DOUBLE_EQ(eval(v, {2, 3}), 36.0);
  for (double t : {-7.0, 0.0, 0.5, 1e3}) EXPECT_EQ(eval(v, {t, 0}), 0.0);

  const auto zero = parse_potential("0", 2);
  EXPECT_EQ(eval(zero, {1.0, -4.0}), 0.0);

  EXPECT_DOUBLE_EQ(eval(parse_potential("x1^2+x2^2", 2), {3, 4}), 25.0);
  EXPECT_DOUBLE_EQ(eval(parse_potential("x1^2*x2^4 + x1^4*x2^2", 2), {1, 2}), 16.0 + 4.0);
}

TEST(Potential, PrecedenceAndAssociativity) {
  EXPECT_DOUBLE_EQ(eval(parse_potential("1 + 2*3", 1), {0}), 7.0);
  EXPECT_DOUBLE_EQ(eval(parse_potential("2*3^2", 1), {0}), 18.0);
  EXPECT_DOUBLE_EQ(eval(parse_potential("2^3^2", 1), {0}), 512.0);
  EXPECT_DOUBLE_EQ(eval(parse_potential("(2^3)^2", 1), {0}), 64.0);
  EXPECT_DOUBLE_EQ(eval(parse_potential("10 - 4 - 3", 1), {0}), 3.0);
  EXPECT_DOUBLE_EQ(eval(parse_potential("-2^2", 1), {0}), -4.0);
  EXPECT_DOUBLE_EQ(eval(parse_potential("x1^0", 1), {0}), 1.0);
}

TEST(Potential, CorpusMatchesDirectArithmetic) {
  speclab::test::Gen gen(20240611);
  for (const auto& entry : corpus()) {
    const auto v = parse_potential(entry.text, 3);
    for (int trial = 0; trial < 100; ++trial) {
      const double a = gen.uniform(-3, 3), b = gen.uniform(-3, 3), c = gen.uniform(-3, 3);
      const double expected = entry.direct(a, b, c);
      const double got = eval(v, {a, b, c});
      EXPECT_LE(std::abs(got - expected), 1e-12 * std::max(1.0, std::abs(expected))) << entry.text;
    }
  }
}

TEST(Potential, ParseIsDeterministic) {
  const auto a = parse_potential("x1^2*x2^4 + exp(x1)", 2);
  const auto b = parse_potential("x1^2*x2^4 + exp(x1)", 2);
  ASSERT_EQ(a.nodes().size(), b.nodes().size());
  for (std::size_t i = 0; i < a.nodes().size(); ++i) {
    EXPECT_EQ(a.nodes()[i].op, b.nodes()[i].op);
    EXPECT_EQ(a.nodes()[i].lhs, b.nodes()[i].lhs);
    EXPECT_EQ(a.nodes()[i].rhs, b.nodes()[i].rhs);
  }
}

TEST(Potential, SyntaxErrorsCarryPositions) {
  EXPECT_EQ(error_position("x1 +* x2", 2), 4u);
  EXPECT_EQ(error_position("x1^2)", 1), 4u);
  EXPECT_EQ(error_position("(x1", 1), 3u);
  EXPECT_EQ(error_position("", 1), 0u);
  EXPECT_EQ(error_position("x1 + ", 1), 5u);
  EXPECT_EQ(error_position("exp x1", 1), 4u);
}

TEST(Potential, UnknownIdentifiers) {
  EXPECT_EQ(error_position("y1 + 1", 2), 0u);
  EXPECT_EQ(error_position("x1 + x3", 2), 5u);
  EXPECT_EQ(error_position("x0", 2), 0u);
  EXPECT_EQ(error_position("2*sin(x1)", 1), 2u);
}

TEST(Potential, ExponentMustBeNonnegativeIntegerLiteral) {
  EXPECT_EQ(error_position("x1^2.5", 1), 3u);
  EXPECT_EQ(error_position("x1^-2", 1), 3u);
  EXPECT_EQ(error_position("x1^x2", 2), 3u);
  EXPECT_EQ(error_position("x1^(2)", 1), 3u);
  EXPECT_EQ(error_position("x1^1e2", 1), 3u);
}

TEST(Potential, DimensionMismatchOnEvaluate) {
  const auto v = parse_potential("x1^2", 2);
  std::vector<double> p{1.0};
  EXPECT_THROW(v.evaluate(p), speclab::DimensionError);
  EXPECT_THROW(parse_potential("x1", 0), speclab::DimensionError);
}

TEST(Potential, NonnegativityCertificate) {
  EXPECT_TRUE(parse_potential("x1^2*x2^2", 2).nonnegative_certified());
  EXPECT_TRUE(parse_potential("x1^2*x2^4 + x1^4*x2^2", 2).nonnegative_certified());
  EXPECT_TRUE(parse_potential("abs(x1) + exp(x2 - 4)", 2).nonnegative_certified());
  EXPECT_TRUE(parse_potential("(x1 - x2)^2 + 3", 2).nonnegative_certified());
  EXPECT_TRUE(parse_potential("0", 1).nonnegative_certified());
  EXPECT_FALSE(parse_potential("x1^3", 1).nonnegative_certified());
  EXPECT_FALSE(parse_potential("x1^2 - 1", 1).nonnegative_certified());
  EXPECT_FALSE(parse_potential("-x1^2", 1).nonnegative_certified());
  EXPECT_FALSE(parse_potential("x1*x2", 2).nonnegative_certified());
}

TEST(Potential, RuntimeGuardRejectsNegativeValues) {
  const auto v = parse_potential("x1^2 - 1", 1);
  std::vector<double> inside{0.0}, outside{2.0}, edge{1.0 - 1e-12};
  EXPECT_THROW(v.evaluate_nonnegative(inside), speclab::DomainError);
  EXPECT_DOUBLE_EQ(v.evaluate_nonnegative(outside), 3.0);
  EXPECT_NO_THROW(v.evaluate_nonnegative(edge));
}

TEST(Potential, OverflowIsNotFinite) {
  const auto v = parse_potential("exp(x1)", 1);
  std::vector<double> p{1000.0};
  EXPECT_THROW(v.evaluate(p), speclab::DomainError);
}
