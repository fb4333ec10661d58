#include <random>

#include <gtest/gtest.h>

#include "ivl/coeff_field.hpp"

namespace ivl {
namespace {

const FieldDescriptor kF{-1, 3};

FieldElem random_elem(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> d(-9, 9);
  FieldElem::Coords c;
  for (int i = 0; i < 4; ++i) c.push_back(BigRational(d(rng), 1 + (d(rng) + 9) % 5));
  return FieldElem(kF, c);
}

TEST(ParseRational, Forms) {
  EXPECT_EQ(parse_rational("7"), BigRational(7));
  EXPECT_EQ(parse_rational("-3/6"), BigRational(-1, 2));
  EXPECT_THROW(parse_rational("1/0"), DivisionByZero);
  EXPECT_THROW(parse_rational("x"), ParseError);
  EXPECT_THROW(parse_rational(""), ParseError);
}

TEST(FieldDescriptor, RejectsBadRadicands) {
  EXPECT_THROW(FieldDescriptor({4}), InvalidField);
  EXPECT_THROW(FieldDescriptor({1}), InvalidField);
  EXPECT_THROW(FieldDescriptor({0}), InvalidField);
  EXPECT_THROW(FieldDescriptor({2, 8}), InvalidField);
  EXPECT_THROW(FieldDescriptor({-1, -1}), InvalidField);
  EXPECT_EQ(FieldDescriptor({-1, 2}).degree(), 4u);
}

TEST(SqrtSymbol, Examples) {
  FieldElem m3 = sqrt_symbol(-3, kF);
  EXPECT_EQ(m3 * m3, FieldElem(-3));
  EXPECT_EQ(m3, FieldElem::basis(kF, 3));

  FieldDescriptor f2{-1, 2};
  FieldElem m2 = sqrt_symbol(-2, f2);
  EXPECT_EQ(m2 * m2, FieldElem(-2));

  EXPECT_THROW(sqrt_symbol(5, kF), NotRepresentable);
  FieldElem s12 = sqrt_symbol(12, kF);
  EXPECT_EQ(s12 * s12, FieldElem(12));
}

TEST(FieldElem, CubeRootOfUnity) {
  FieldElem zeta = (FieldElem(-1) + sqrt_symbol(-3, kF)) / FieldElem(2);
  EXPECT_FALSE(zeta.is_one());
  EXPECT_TRUE((zeta * zeta * zeta).is_one());
  EXPECT_EQ(zeta * zeta + zeta + FieldElem(1), FieldElem(0));
}

TEST(FieldElem, Axioms) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    FieldElem a = random_elem(rng), b = random_elem(rng), c = random_elem(rng);
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_TRUE((a - a).is_zero());
    if (!a.is_zero()) {
      EXPECT_TRUE((a * a.inverse()).is_one());
      EXPECT_EQ(a.norm() != 0, true);
    }
  }
}

TEST(FieldElem, ZeroInverseThrows) { EXPECT_THROW(FieldElem(kF).inverse(), DivisionByZero); }

TEST(FieldElem, MixesWithRationals) {
  FieldElem i = sqrt_symbol(-1, kF);
  FieldElem q(BigRational(1, 2));
  FieldElem s = q + i;
  EXPECT_EQ(s.field(), kF);
  EXPECT_EQ(s - i, q);
  EXPECT_TRUE((s - i).is_rational());
}

TEST(FieldElem, RenderIsStable) {
  FieldElem e = FieldElem(1) + FieldElem(BigRational(-3, 2)) * sqrt_symbol(3, kF);
  EXPECT_EQ(e.to_string(), e.to_string());
  EXPECT_NE(e.to_string().find("sqrt(3)"), std::string::npos);
}

TEST(Galois, IsRingHomomorphism) {
  std::mt19937_64 rng(5);
  std::vector<GaloisSigns> autos = {GaloisSigns{{-1, -1}}, GaloisSigns{{3, -1}}, GaloisSigns{{-1, -1}, {3, -1}}};
  for (int t = 0; t < 100; ++t) {
    FieldElem a = random_elem(rng), b = random_elem(rng);
    for (const auto& s : autos) {
      EXPECT_EQ((a + b).galois(s), a.galois(s) + b.galois(s));
      EXPECT_EQ((a * b).galois(s), a.galois(s) * b.galois(s));
      EXPECT_EQ(a.galois(s).galois(s), a);
    }
  }
}

TEST(Galois, ThirdIsProductOfFirstTwo) {
  GaloisSigns r1{{-1, -1}}, r2{{3, -1}};
  GaloisSigns r3 = r1 * r2;
  std::mt19937_64 rng(9);
  for (int t = 0; t < 50; ++t) {
    FieldElem a = random_elem(rng);
    EXPECT_EQ(a.galois(r3), a.galois(r1).galois(r2));
  }
  EXPECT_EQ(r3, (GaloisSigns{{-1, -1}, {3, -1}}));
  EXPECT_TRUE((r1 * r1).is_identity());
  // sqrt(-3) = sqrt(-1)sqrt(3) is fixed by the product.
  FieldElem m3 = sqrt_symbol(-3, kF);
  EXPECT_EQ(m3.galois(r3), m3);
  EXPECT_EQ(m3.galois(r1), -m3);
}

TEST(Galois, NormIsFixed) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 30; ++t) {
    FieldElem a = random_elem(rng);
    FieldElem prod = a * a.galois(GaloisSigns{{-1, -1}}) * a.galois(GaloisSigns{{3, -1}}) *
                     a.galois(GaloisSigns{{-1, -1}, {3, -1}});
    EXPECT_TRUE(prod.is_rational());
    EXPECT_EQ(prod.rational(), a.norm());
  }
}

}  // namespace
}  // namespace ivl
