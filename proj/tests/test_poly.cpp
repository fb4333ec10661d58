#include <random>

#include <gtest/gtest.h>

#include "ivl/poly.hpp"
#include "test_support.hpp"

namespace ivl {
namespace {

using test::random_poly;

TEST(VarSet, Lookup) {
  VarSet v{"x", "y"};
  EXPECT_EQ(v.require("y"), 1u);
  EXPECT_FALSE(v.index_of("z"));
  EXPECT_THROW(v.require("z"), VarSetMismatch);
  EXPECT_THROW((VarSet{"x", "x"}), VarSetMismatch);
}

TEST(MultiPoly, ArithmeticAndRender) {
  VarSet v{"x", "y"};
  MultiPoly x = MultiPoly::variable(v, 0), y = MultiPoly::variable(v, 1);
  MultiPoly p = (x + y) * (x - y);
  EXPECT_EQ(p, x * x - y * y);
  EXPECT_EQ(p.to_string(), "x^2 - y^2");
  EXPECT_EQ(p.total_degree(), 2u);
  EXPECT_TRUE((p - p).is_zero());
  EXPECT_EQ((x + y).pow(3).size(), 4u);
}

TEST(MultiPoly, GrlexLeadingTerm) {
  VarSet v{"x", "y"};
  MultiPoly x = MultiPoly::variable(v, 0), y = MultiPoly::variable(v, 1);
  MultiPoly p = y * y * y + x * x + x * y * y;
  EXPECT_EQ(p.leading_monomial(), (x * y * y).leading_monomial());
}

TEST(MultiPoly, DivideExact) {
  VarSet v{"x", "y"};
  MultiPoly x = MultiPoly::variable(v, 0), y = MultiPoly::variable(v, 1);
  MultiPoly one(v, FieldElem(1));
  auto q = (x * x - one).divide_exact(x - one);
  ASSERT_TRUE(q);
  EXPECT_EQ(*q, x + one);
  EXPECT_FALSE((x * x + one).divide_exact(x - one));
  EXPECT_THROW(x.divide_exact(MultiPoly(v)), DivisionByZero);
}

TEST(MultiPoly, Derivative) {
  VarSet v{"x", "y"};
  MultiPoly x = MultiPoly::variable(v, 0), y = MultiPoly::variable(v, 1);
  EXPECT_EQ((x * x * y).derivative(0), (x * y).scaled(FieldElem(2)));
  EXPECT_TRUE(x.derivative(1).is_zero());
}

TEST(MultiPoly, MismatchedVarSetsThrow) {
  MultiPoly a = MultiPoly::variable(VarSet{"x"}, 0);
  MultiPoly b = MultiPoly::variable(VarSet{"y"}, 0);
  EXPECT_THROW(a + b, VarSetMismatch);
}

TEST(Gcd, Examples) {
  VarSet v{"x", "y"};
  MultiPoly x = MultiPoly::variable(v, 0), y = MultiPoly::variable(v, 1);
  MultiPoly one(v, FieldElem(1));
  EXPECT_EQ(multivariate_gcd(x * x - one, x - one), x - one);
  MultiPoly f = x * y + one;
  EXPECT_EQ(multivariate_gcd(f, MultiPoly(v)), f.monic());
  EXPECT_TRUE(multivariate_gcd(MultiPoly(v), MultiPoly(v)).is_zero());
  EXPECT_EQ(multivariate_gcd((x + y) * (x + y) * x, (x + y) * y), x + y);
  EXPECT_TRUE(multivariate_gcd(x + one, x - one).is_one());
}

TEST(Gcd, OverExtensionField) {
  FieldDescriptor f{-1, 3};
  VarSet v{"x", "y"};
  MultiPoly x = MultiPoly::variable(v, 0), y = MultiPoly::variable(v, 1);
  MultiPoly i(v, sqrt_symbol(-1, f));
  MultiPoly a = x - i * y, b = x + i * y;
  MultiPoly g = multivariate_gcd(a * a * b, a * (y + x * x));
  EXPECT_EQ(g, a.monic());
}

// Trial division by the gcd leaves zero remainder, and the cofactors are
// coprime.
TEST(Gcd, PropertyRandomProducts) {
  VarSet v{"x", "y", "z"};
  std::mt19937_64 rng(42);
  for (int t = 0; t < 60; ++t) {
    MultiPoly c = random_poly(v, 2, 3, rng);
    MultiPoly p = random_poly(v, 3, 4, rng) * c;
    MultiPoly q = random_poly(v, 3, 4, rng) * c;
    if (p.is_zero() || q.is_zero()) continue;
    MultiPoly g = multivariate_gcd(p, q);
    auto pq = p.divide_exact(g), qq = q.divide_exact(g);
    ASSERT_TRUE(pq) << p << " / " << g;
    ASSERT_TRUE(qq) << q << " / " << g;
    if (!c.is_zero()) {
      EXPECT_TRUE(g.divide_exact(c.monic()).has_value()) << g << " vs " << c;
    }
    EXPECT_TRUE(multivariate_gcd(*pq, *qq).is_one());
  }
}

}  // namespace
}  // namespace ivl
