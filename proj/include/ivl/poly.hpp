#pragma once

// Sparse multivariate polynomials with FieldElem coefficients.
//
// Terms are kept sorted by descending graded-lexicographic order, where
// variable 0 is the largest. Exponent vectors are stored sparsely so that
// a wide variable context (a script declaring dozens of names) costs
// nothing for polynomials that only touch a few of them.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "ivl/coeff_field.hpp"

namespace ivl {

class VarSet {
 public:
  VarSet() : names_(std::make_shared<const std::vector<std::string>>()) {}
  // Throws VarSetMismatch on duplicate names.
  explicit VarSet(std::vector<std::string> names);
  VarSet(std::initializer_list<std::string> names) : VarSet(std::vector<std::string>(names)) {}

  std::size_t size() const { return names_->size(); }
  const std::string& name(std::size_t i) const { return (*names_)[i]; }
  const std::vector<std::string>& names() const { return *names_; }
  std::optional<std::size_t> index_of(std::string_view name) const;
  // Throws VarSetMismatch for unknown names.
  std::size_t require(std::string_view name) const;

  friend bool operator==(const VarSet& a, const VarSet& b) {
    return a.names_ == b.names_ || *a.names_ == *b.names_;
  }

 private:
  std::shared_ptr<const std::vector<std::string>> names_;
};

// Exponent vector stored as sorted (variable, exponent) pairs with nonzero
// exponents only.
class Monomial {
 public:
  using Var = std::uint32_t;
  using Exp = std::uint32_t;
  struct Entry {
    Var var;
    Exp exp;
    friend bool operator==(const Entry&, const Entry&) = default;
  };
  using Entries = boost::container::small_vector<Entry, 4>;

  Monomial() = default;
  static Monomial var(Var v, Exp e = 1);
  // Entries need not be sorted; zero exponents are dropped.
  static Monomial from_entries(Entries entries);

  const Entries& entries() const { return entries_; }
  Exp total_degree() const { return total_; }
  Exp degree(Var v) const;
  bool is_one() const { return entries_.empty(); }

  // True iff this monomial divides `o`.
  bool divides(const Monomial& o) const;
  // Requires divides(o).
  Monomial quotient_of(const Monomial& o) const;
  // Drops variable v.
  Monomial without(Var v) const;
  static Monomial gcd(const Monomial& a, const Monomial& b);

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.total_ == b.total_ && a.entries_ == b.entries_;
  }
  // Graded lexicographic order, variable 0 largest.
  friend int grlex_compare(const Monomial& a, const Monomial& b);

  std::size_t hash() const;

 private:
  Entries entries_;
  Exp total_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

// Coefficients that happen to be rational are stored in Q form so that the
// common case multiplies with a single rational product.
void demote_if_rational(FieldElem& e);

class MultiPoly {
 public:
  struct Term {
    Monomial mono;
    FieldElem coeff;
  };

  MultiPoly() = default;
  explicit MultiPoly(VarSet vars) : vars_(std::move(vars)) {}
  MultiPoly(VarSet vars, FieldElem c);
  // Terms in any order; like monomials are combined and zeros dropped.
  MultiPoly(VarSet vars, std::vector<Term> terms);

  static MultiPoly variable(const VarSet& vars, std::size_t index);

  const VarSet& vars() const { return vars_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  // Constant coefficient; zero for the zero polynomial.
  FieldElem constant_value() const;
  bool is_one() const;

  // Leading term under grlex. Require a nonzero polynomial.
  const Monomial& leading_monomial() const { return terms_.front().mono; }
  const FieldElem& leading_coeff() const { return terms_.front().coeff; }

  Monomial::Exp degree(std::size_t var) const;
  Monomial::Exp total_degree() const;
  bool involves(std::size_t var) const { return degree(var) > 0; }
  // Variables that occur, ascending.
  std::vector<std::size_t> support() const;
  // Greatest monomial dividing every term.
  Monomial monomial_content() const;
  // Field of the first non-rational coefficient, or Q.
  FieldDescriptor coeff_field() const;

  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }
  MultiPoly operator-() const;
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend bool operator==(const MultiPoly& a, const MultiPoly& b);

  MultiPoly scaled(const FieldElem& c) const;
  MultiPoly times_monomial(const Monomial& m) const;
  // Requires m to divide every term.
  MultiPoly divided_by_monomial(const Monomial& m) const;
  MultiPoly pow(unsigned e) const;
  // Divides by the leading coefficient; the zero polynomial is returned as is.
  MultiPoly monic() const;

  // Quotient when `d` divides this exactly, nullopt otherwise. Throws
  // DivisionByZero when d is zero.
  std::optional<MultiPoly> divide_exact(const MultiPoly& d) const;

  // Coefficients with respect to `var`, index = power.
  std::vector<MultiPoly> coefficients_in(std::size_t var) const;
  static MultiPoly from_coefficients(const std::vector<MultiPoly>& coeffs, std::size_t var,
                                     const VarSet& vars);

  MultiPoly derivative(std::size_t var) const;
  MultiPoly galois(const GaloisSigns& s) const;
  // `values` is indexed by variable; entries for absent variables are ignored.
  FieldElem eval(const std::vector<FieldElem>& values) const;
  // Image in F_p; coefficient images are supplied by `img`.
  std::uint64_t eval_mod(const ModularImage& img, const std::vector<std::uint64_t>& values) const;

  // Deterministic rendering, e.g. `x1^2*x2 - 3/2*x1 + (1 + sqrt(-1))`.
  std::string to_string() const;

 private:
  void check_vars(const MultiPoly& o) const;
  void normalize_unsorted();

  VarSet vars_;
  std::vector<Term> terms_;
};

std::ostream& operator<<(std::ostream& os, const MultiPoly& p);

// Greatest common divisor normalized to leading coefficient 1 (zero when both
// inputs are zero). Uses a modular degree-bound certificate to settle the
// coprime case, trial division for the divisor-of-one-input case, and
// recursive subresultant sequences otherwise.
MultiPoly multivariate_gcd(const MultiPoly& p, const MultiPoly& q);

}  // namespace ivl

template <>
struct std::hash<ivl::Monomial> {
  std::size_t operator()(const ivl::Monomial& m) const { return m.hash(); }
};
