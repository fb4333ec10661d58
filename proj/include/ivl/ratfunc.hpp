#pragma once

// Reduced fractions of sparse polynomials, with substitution, derivatives,
// evaluation and identity testing.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ivl/poly.hpp"

namespace ivl {

class RatFunc {
 public:
  RatFunc() = default;
  explicit RatFunc(VarSet vars) : num_(vars), den_(vars, FieldElem(1)) {}
  RatFunc(VarSet vars, FieldElem c) : num_(vars, std::move(c)), den_(std::move(vars), FieldElem(1)) {}
  // NOLINTNEXTLINE(google-explicit-constructor)
  RatFunc(MultiPoly p);
  // Reduces num/den to canonical form. Throws DivisionByZero if den is zero.
  RatFunc(MultiPoly num, MultiPoly den);

  static RatFunc variable(const VarSet& vars, std::size_t index);
  static RatFunc variable(const VarSet& vars, std::string_view name);

  const VarSet& vars() const { return num_.vars(); }
  const MultiPoly& num() const { return num_; }
  const MultiPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_one(); }
  bool is_constant() const { return num_.is_constant() && den_.is_one(); }
  std::vector<std::size_t> support() const;

  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }
  RatFunc operator-() const;
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  // Structural equality of canonical forms. For a verdict use eq_exact.
  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

  RatFunc inverse() const;
  // Integer power; negative exponents invert. Throws DivisionByZero for 0^-k.
  RatFunc pow(long e) const;
  RatFunc galois(const GaloisSigns& s) const;

  // `num` or `(num)/(den)`, parseable as a DSL expression.
  std::string to_string() const;

 private:
  struct Raw {};
  RatFunc(MultiPoly num, MultiPoly den, Raw) : num_(std::move(num)), den_(std::move(den)) {}
  // Scales so that den has leading coefficient 1.
  void normalize_unit();

  MultiPoly num_;
  MultiPoly den_;
};

std::ostream& operator<<(std::ostream& os, const RatFunc& f);

// Image for each variable; nullopt leaves the variable fixed.
using Substitution = std::vector<std::optional<RatFunc>>;

// Simultaneous substitution. The result lives over the varset of the images
// (or of f when nothing is mapped). Throws DenominatorVanishes when the
// composed denominator is identically zero.
RatFunc substitute(const RatFunc& f, const Substitution& m);

RatFunc differentiate(const RatFunc& f, std::size_t var);

// Throws PoleAtPoint when the denominator vanishes at the point.
FieldElem eval(const RatFunc& f, const std::vector<FieldElem>& point);

bool eq_exact(const RatFunc& f, const RatFunc& g);

// Numerator of f - g before any gcd reduction: f.num*g.den - g.num*f.den.
MultiPoly difference_numerator(const RatFunc& f, const RatFunc& g);

struct ProbableEqOptions {
  unsigned trials = 20;
  long bound = 1000;
  std::uint64_t seed = 0x5eed;
  // Pole-rejection retries allowed per trial.
  unsigned retries = 20;
};

struct ProbableEqResult {
  bool equal = true;
  unsigned trials_run = 0;
  // Point of disagreement when equal is false.
  std::vector<BigRational> witness;
};

// Random integer points in [-bound, bound]^n; false is definitive.
ProbableEqResult probable_eq_detail(const RatFunc& f, const RatFunc& g, const ProbableEqOptions& opt);
bool probable_eq(const RatFunc& f, const RatFunc& g, unsigned trials, long bound);

}  // namespace ivl
