#include <random>

#include <gtest/gtest.h>

#include "ivl/ratfunc.hpp"
#include "test_support.hpp"

namespace ivl {
namespace {

struct Ctx {
  VarSet v{"x", "y", "z"};
  RatFunc x = RatFunc::variable(v, 0);
  RatFunc y = RatFunc::variable(v, 1);
  RatFunc z = RatFunc::variable(v, 2);
  RatFunc c(long n) const { return RatFunc(v, FieldElem(n)); }
};

TEST(RatFunc, ReducesToCanonicalForm) {
  Ctx t;
  RatFunc f = (t.x * t.x - t.c(1)) / (t.x - t.c(1));
  EXPECT_TRUE(f.is_polynomial());
  EXPECT_EQ(f, t.x + t.c(1));
  EXPECT_TRUE((f + (-f)).is_zero());
  EXPECT_EQ(((t.x + t.y) / (t.c(2) * t.x)).den().leading_coeff(), FieldElem(1));
}

TEST(RatFunc, CanonicalizationIsIdempotent) {
  std::mt19937_64 rng(17);
  Ctx t;
  for (int k = 0; k < 40; ++k) {
    RatFunc f = test::random_ratfunc(t.v, 3, rng);
    RatFunc again(f.num(), f.den());
    EXPECT_EQ(again, f);
  }
}

TEST(RatFunc, DivisionByZeroThrows) {
  Ctx t;
  EXPECT_THROW(t.x / RatFunc(t.v), DivisionByZero);
  EXPECT_THROW(RatFunc(t.v).pow(-1), DivisionByZero);
}

TEST(RatFunc, CubicDenominatorAtOnes) {
  VarSet v{"X1", "X2"};
  RatFunc a = RatFunc::variable(v, 0), b = RatFunc::variable(v, 1);
  auto k = [&](long n) { return RatFunc(v, FieldElem(n)); };
  RatFunc g = k(1) + a + b + a.pow(3) + b.pow(3) +
              a * b * (k(3) * a * b - k(2) * a * a - k(2) * b * b + k(2)) + a.pow(4) + b.pow(4);
  EXPECT_EQ(eval(g, {FieldElem(1), FieldElem(1)}), FieldElem(8));
}

TEST(Substitute, Examples) {
  VarSet v{"x", "t"};
  RatFunc x = RatFunc::variable(v, 0), tt = RatFunc::variable(v, 1), one(v, FieldElem(1));
  Substitution m(2);
  m[0] = (one - tt) / (one + tt);
  EXPECT_EQ(substitute((one - x) / (one + x), m), tt);

  Substitution inv(2);
  inv[0] = one / x;
  EXPECT_EQ(substitute(substitute(x, inv), inv), x);

  Substitution bad(2);
  bad[0] = tt - tt;
  EXPECT_THROW(substitute(one / x, bad), DenominatorVanishes);
}

TEST(Substitute, AcrossVarSets) {
  VarSet src{"u1"}, dst{"z1", "z2"};
  Substitution m(1);
  m[0] = RatFunc::variable(dst, 0) / RatFunc::variable(dst, 1);
  RatFunc r = substitute(RatFunc::variable(src, 0), m);
  EXPECT_EQ(r.vars(), dst);
  EXPECT_EQ(r, RatFunc::variable(dst, 0) / RatFunc::variable(dst, 1));
}

TEST(Substitute, IsMultiplicative) {
  std::mt19937_64 rng(23);
  Ctx t;
  for (int k = 0; k < 25; ++k) {
    RatFunc f = test::random_ratfunc(t.v, 3, rng), g = test::random_ratfunc(t.v, 3, rng);
    Substitution m(3);
    for (auto& e : m) e = test::random_ratfunc(t.v, 2, rng);
    try {
      EXPECT_TRUE(eq_exact(substitute(f * g, m), substitute(f, m) * substitute(g, m)));
    } catch (const DenominatorVanishes&) {
    }
  }
}

TEST(Differentiate, Examples) {
  Ctx t;
  EXPECT_EQ(differentiate(t.x * t.x, 0), t.c(2) * t.x);
  EXPECT_EQ(differentiate(t.c(1) / t.x, 0), -t.c(1) / (t.x * t.x));
  EXPECT_EQ(differentiate(t.x / t.y, 0), t.c(1) / t.y);
  EXPECT_TRUE(differentiate(t.y, 0).is_zero());
}

TEST(Differentiate, ChainRuleOnRandomInstances) {
  std::mt19937_64 rng(2024);
  std::vector<VarSet> sets = {VarSet{"a"}, VarSet{"a", "b"}, VarSet{"a", "b", "c"}};
  for (int k = 0; k < 30; ++k) {
    auto r = test::chain_rule_instance(sets[k % 3], rng);
    EXPECT_TRUE(r.holds) << "instance " << k << " variable " << r.var;
  }
}

TEST(Eval, ExamplesAndPoles) {
  Ctx t;
  EXPECT_EQ(eval(t.x / t.y, {FieldElem(1), FieldElem(2), FieldElem(0)}), FieldElem(BigRational(1, 2)));
  EXPECT_THROW(eval(t.c(1) / t.x, {FieldElem(0), FieldElem(0), FieldElem(0)}), PoleAtPoint);
}

TEST(EqExact, Examples) {
  Ctx t;
  EXPECT_TRUE(eq_exact((t.x * t.x - t.c(1)) / (t.x - t.c(1)), t.x + t.c(1)));
  EXPECT_FALSE(eq_exact(t.x, t.x + t.c(1)));
  EXPECT_TRUE(difference_numerator(t.x / t.y, (t.c(2) * t.x) / (t.c(2) * t.y)).is_zero());
}

TEST(ProbableEq, Examples) {
  Ctx t;
  EXPECT_FALSE(probable_eq(t.x, t.x + t.c(1), 20, 100));
  RatFunc a = (t.x * t.x - t.y * t.y) / (t.x - t.y);
  EXPECT_TRUE(probable_eq(a, t.x + t.y, 50, 1000));
  auto d = probable_eq_detail(t.x * t.y, t.x * t.y + (t.x - t.c(3)) * (t.y - t.c(4)), {});
  EXPECT_FALSE(d.equal);
  ASSERT_EQ(d.witness.size(), 3u);
}

// A false verdict is definitive and a true one is consistent with exact
// equality on random pairs that differ by a small perturbation.
TEST(ProbableEq, AgreesWithExact) {
  std::mt19937_64 rng(99);
  Ctx t;
  for (int k = 0; k < 40; ++k) {
    RatFunc f = test::random_ratfunc(t.v, 3, rng);
    RatFunc g = (k % 2 == 0) ? (f * t.z) / t.z : f + test::random_ratfunc(t.v, 1, rng);
    bool exact = eq_exact(f, g);
    EXPECT_EQ(probable_eq(f, g, 100, 1000), exact);
  }
}

TEST(EqExact, EquivalenceRelation) {
  std::mt19937_64 rng(5);
  Ctx t;
  for (int k = 0; k < 20; ++k) {
    RatFunc f = test::random_ratfunc(t.v, 3, rng);
    RatFunc g = (f * (t.x + t.c(2))) / (t.x + t.c(2));
    RatFunc h = f + t.c(0);
    EXPECT_TRUE(eq_exact(f, f));
    EXPECT_EQ(eq_exact(f, g), eq_exact(g, f));
    EXPECT_TRUE(eq_exact(f, g) && eq_exact(g, h) && eq_exact(f, h));
  }
}

TEST(RatFunc, RenderParsesBackShape) {
  Ctx t;
  RatFunc f = (t.x + t.c(1)) / (t.y * t.z);
  EXPECT_EQ(f.to_string(), "(x + 1)/(y*z)");
}

}  // namespace
}  // namespace ivl
