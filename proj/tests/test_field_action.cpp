#include <random>

#include <gtest/gtest.h>

#include "ivl/field_action.hpp"
#include "test_support.hpp"

namespace ivl {
namespace {

using catalog::group_generators;
using catalog::matrix;

const FieldDescriptor kF{-1, 2};

struct Xs {
  VarSet v{"x1", "x2", "x3", "x4"};
  std::vector<std::size_t> all{0, 1, 2, 3};
  RatFunc operator[](std::size_t i) const { return RatFunc::variable(v, i); }
  RatFunc c(const FieldElem& e) const { return RatFunc(v, e); }
};

TEST(FromMatrix, SigmaAndTauImages) {
  Xs x;
  FieldAutomorphism s = from_matrix(matrix("sigma"), x.v, x.all);
  EXPECT_TRUE(eq_exact(s.image(0), -(x[0] + x[1] + x[2] + x[3]) / x.c(2)));
  EXPECT_TRUE(eq_exact(s.image(1), (x[0] - x[1] + x[2] - x[3]) / x.c(2)));

  FieldAutomorphism t = from_matrix(matrix("tau"), x.v, x.all);
  EXPECT_TRUE(eq_exact(t.image(0), -x[2]));
  EXPECT_TRUE(eq_exact(t.image(1), -x[1]));
  EXPECT_TRUE(eq_exact(t.image(2), -x[0]));
  EXPECT_TRUE(eq_exact(t.image(3), x[3]));

  EXPECT_TRUE(is_identity(from_matrix(RatMatrix::identity(4), x.v, x.all)));
  EXPECT_THROW(from_matrix(RatMatrix(4), x.v, x.all), NotInvertible);
}

TEST(FromMatrix, OrdersMatchMatrixOrders) {
  Xs x;
  for (const auto& name : {"lambda1", "lambda2", "sigma", "tau", "lambda3", "lambda4"}) {
    EXPECT_EQ(order_of(from_matrix(matrix(name), x.v, x.all)), matrix_order(matrix(name))) << name;
  }
}

TEST(Monomial, ImagesAndErrors) {
  VarSet v{"u1", "u2", "u3"};
  RatFunc u1 = RatFunc::variable(v, 0), u2 = RatFunc::variable(v, 1), u3 = RatFunc::variable(v, 2);
  RatFunc one(v, FieldElem(1));
  FieldAutomorphism l2 = monomial_automorphism({{-1, 0, -1}, {0, -1, 0}, {0, 0, 1}}, {one, one, one}, v, {0, 1, 2});
  EXPECT_EQ(l2.image(0), one / u1);
  EXPECT_EQ(l2.image(1), one / u2);
  EXPECT_EQ(l2.image(2), u3 / u1);
  EXPECT_EQ(order_of(l2), 2u);

  EXPECT_TRUE(is_identity(monomial_automorphism({{1, 0}, {0, 1}}, {one, one}, v, {0, 1})));
  EXPECT_THROW(monomial_automorphism({{2, 0}, {0, 1}}, {one, one}, v, {0, 1}), NotUnimodular);
  EXPECT_THROW(monomial_automorphism({{1, 0}, {0, 1}}, {one, RatFunc(v)}, v, {0, 1}), ZeroCoefficient);
}

TEST(Monomial, SymbolicCoefficient) {
  VarSet v{"x", "y", "a"};
  RatFunc x = RatFunc::variable(v, 0), y = RatFunc::variable(v, 1), a = RatFunc::variable(v, 2);
  FieldAutomorphism s = monomial_automorphism({{-1, 0}, {0, -1}}, {a, a}, v, {0, 1});
  EXPECT_EQ(s.image(0), a / x);
  EXPECT_TRUE(is_invariant(s, (x - y) / (a - x * y)));
  EXPECT_TRUE(is_invariant(s, (x + y) / (a + x * y)));
}

TEST(Apply, GaloisThenSubstitution) {
  VarSet v{"y1", "y2"};
  RatFunc y1 = RatFunc::variable(v, 0), y2 = RatFunc::variable(v, 1);
  RatFunc i(v, sqrt_symbol(-1, kF));
  Substitution m(2);
  m[0] = y2;
  m[1] = y1;
  FieldAutomorphism r(v, GaloisSigns{{-1, -1}}, m);
  EXPECT_EQ(apply(r, i * y1), -i * y2);
  EXPECT_EQ(apply(FieldAutomorphism::identity(v), i * y1 + y2), i * y1 + y2);
}

TEST(Compose, LawOnRandomFunctions) {
  Xs x;
  FieldAutomorphism a = from_matrix(matrix("sigma"), x.v, x.all);
  FieldAutomorphism b = from_matrix(matrix("lambda1"), x.v, x.all);
  std::mt19937_64 rng(8);
  for (int k = 0; k < 10; ++k) {
    RatFunc f = test::random_ratfunc(x.v, 3, rng);
    EXPECT_TRUE(eq_exact(apply(compose(a, b), f), apply(a, apply(b, f))));
  }
  EXPECT_TRUE(same_automorphism(compose(a, FieldAutomorphism::identity(x.v)), a));
}

TEST(Compose, GaloisTwistHalvesTheOrder) {
  VarSet v{"y1"};
  RatFunc y1 = RatFunc::variable(v, 0);
  RatFunc i(v, sqrt_symbol(-1, kF));
  Substitution m(1);
  m[0] = i * y1;
  FieldAutomorphism plain(v, GaloisSigns{}, m);
  FieldAutomorphism twisted(v, GaloisSigns{{-1, -1}}, m);
  EXPECT_EQ(order_of(plain), 4u);
  EXPECT_EQ(order_of(twisted), 2u);
  EXPECT_TRUE(is_identity(compose(twisted, twisted)));
}

TEST(Compose, RhoSquaredIsIdentity) {
  VarSet v{"y1", "y2", "y3", "y4"};
  auto y = [&](std::size_t k) { return RatFunc::variable(v, k); };
  Substitution m(4);
  m[0] = -y(3);
  m[1] = y(2);
  m[2] = y(1);
  m[3] = -y(0);
  FieldAutomorphism rho(v, GaloisSigns{{-1, -1}}, m);
  EXPECT_TRUE(is_identity(compose(rho, rho)));
  EXPECT_EQ(apply(rho, y(0)), -y(3));
}

TEST(OrderOf, CapExceeded) {
  VarSet v{"x"};
  Substitution m(1);
  m[0] = RatFunc::variable(v, 0) + RatFunc(v, FieldElem(1));
  EXPECT_THROW(order_of(FieldAutomorphism(v, {}, m)), OrderExceedsCap);
}

TEST(Representation, ColumnsConventionHolds) {
  for (const auto& name : {"Q8", "4.33.3", "4.33.6"}) {
    auto r = check_representation(group_generators(name));
    EXPECT_TRUE(r.ok) << name;
    EXPECT_GT(r.pairs_checked, 0u);
  }
}

TEST(Representation, RowsConventionFails) {
  auto r = check_representation(group_generators("4.33.3"), MatrixConvention::Rows);
  EXPECT_FALSE(r.ok);
  EXPECT_TRUE(r.counterexample.has_value());
}

TEST(Invariance, Examples) {
  VarSet v{"x", "y", "z"};
  RatFunc x = RatFunc::variable(v, 0), y = RatFunc::variable(v, 1), z = RatFunc::variable(v, 2);
  Substitution m(3);
  m[0] = y;
  m[1] = z;
  m[2] = x;
  FieldAutomorphism cyc(v, {}, m);
  RatFunc three(v, FieldElem(3));
  RatFunc den = x * x + y * y + z * z - x * y - y * z - z * x;
  RatFunc u = (x * x * y + y * y * z + z * z * x - three * x * y * z) / den;
  EXPECT_TRUE(is_invariant_all({cyc}, u));
  EXPECT_TRUE(is_invariant(cyc, x + y + z));
  EXPECT_FALSE(is_invariant(cyc, x));

  VarSet w{"y1"};
  Substitution l(1);
  l[0] = RatFunc(w, sqrt_symbol(-1, kF)) * RatFunc::variable(w, 0);
  EXPECT_FALSE(is_invariant(FieldAutomorphism(w, {}, l), RatFunc::variable(w, 0)));
}

TEST(Invariance, ClosedUnderFieldOperations) {
  Xs x;
  FieldAutomorphism s = from_matrix(matrix("sigma"), x.v, x.all);
  std::mt19937_64 rng(31);
  auto orbit_sum = [&](const RatFunc& p) { return p + apply(s, p) + apply(s, apply(s, p)); };
  for (int k = 0; k < 6; ++k) {
    RatFunc f = orbit_sum(RatFunc(test::random_poly(x.v, 3, 2, rng)));
    RatFunc g = orbit_sum(RatFunc(test::random_poly(x.v, 3, 2, rng)));
    ASSERT_TRUE(is_invariant(s, f));
    EXPECT_TRUE(is_invariant(s, f + g));
    EXPECT_TRUE(is_invariant(s, f - g));
    EXPECT_TRUE(is_invariant(s, f * g));
    if (!g.is_zero()) {
      EXPECT_TRUE(is_invariant(s, f / g));
    }
  }
}

TEST(Jacobian, RankExamples) {
  VarSet v{"x", "y", "z"};
  RatFunc x = RatFunc::variable(v, 0), y = RatFunc::variable(v, 1), z = RatFunc::variable(v, 2);
  std::vector<FieldElem> p{FieldElem(2), FieldElem(3), FieldElem(5)};
  EXPECT_EQ(jacobian_rank_at({x, x * x}, {0, 1, 2}, p), 1u);
  EXPECT_EQ(jacobian_rank_at({x, y}, {0, 1, 2}, p), 2u);
  EXPECT_THROW(jacobian_rank_at({RatFunc(v, FieldElem(1)) / (x - RatFunc(v, FieldElem(2)))}, {0}, p), PoleAtPoint);
  RatFunc c(v, FieldElem(BigRational(-7, 3)));
  EXPECT_EQ(jacobian_rank_at({c * x, c * (x * y + z), y}, {0, 1, 2}, p),
            jacobian_rank_at({x, x * y + z, y}, {0, 1, 2}, p));
}

TEST(Jacobian, CertifyIndependence) {
  VarSet v{"x", "y", "z"};
  RatFunc x = RatFunc::variable(v, 0), y = RatFunc::variable(v, 1), z = RatFunc::variable(v, 2);
  RankCertificate ok = certify_independence({x / y, x * y, z / (x + y)}, {0, 1, 2});
  EXPECT_TRUE(ok.full);
  EXPECT_EQ(ok.rank, 3u);
  EXPECT_LE(ok.attempts, 50u);
  EXPECT_EQ(ok.point.size(), 3u);

  RankCertificate dep = certify_independence({x + y, (x + y) * (x + y), z}, {0, 1, 2}, 5);
  EXPECT_FALSE(dep.full);
  EXPECT_EQ(dep.rank, 2u);
}

TEST(AffineOrbit, SignAndTwist) {
  VarSet v{"x", "t"};
  RatFunc x = RatFunc::variable(v, 0), t = RatFunc::variable(v, 1);
  RatFunc one(v, FieldElem(1));
  auto single = [&](RatFunc img) {
    Substitution m(2);
    m[0] = std::move(img);
    return FieldAutomorphism(v, {}, m);
  };
  EXPECT_EQ(affine_orbit_invariant(ActionGroup({{"neg", single(-x)}}), 0), x * x);
  EXPECT_EQ(affine_orbit_invariant(ActionGroup({{"flip", single(one - x)}}), 0), x * x - x);
  EXPECT_EQ(affine_orbit_invariant(ActionGroup({{"id", FieldAutomorphism::identity(v)}}), 0), x);

  RatFunc i(v, sqrt_symbol(-1, kF));
  RatFunc q = affine_orbit_invariant(ActionGroup({{"rot", single(i * x)}}), 0);
  EXPECT_EQ(q, x.pow(4));

  EXPECT_THROW(affine_orbit_invariant(ActionGroup({{"inv", single(one / x)}}), 0), NotAffineAction);
  EXPECT_THROW(ActionGroup({{"shift", single(x + t)}}), GroupTooLarge);
}

}  // namespace
}  // namespace ivl
