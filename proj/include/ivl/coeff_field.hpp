#pragma once

// Exact arithmetic in Q and in multiquadratic extensions Q(sqrt d1, sqrt d2).
//
// An element is stored as a coordinate vector over the radical basis
// { prod_{i in S} sqrt(d_i) : S subset of radicands }, indexed by the bit mask
// of S. With this basis a Galois automorphism is a sign flip per coordinate.

#include <array>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>
#include <gmpxx.h>

#include "ivl/errors.hpp"

namespace ivl {

using BigInt = mpz_class;
using BigRational = mpq_class;

std::string to_string(const BigRational& q);

// Parses "p", "-p" or "p/q". Throws ParseError on malformed input and
// DivisionByZero on a zero denominator.
BigRational parse_rational(std::string_view text);

class FieldDescriptor {
 public:
  static constexpr std::size_t kMaxRadicands = 2;

  FieldDescriptor() = default;
  // Throws InvalidField unless every radicand is squarefree, not 0 or 1, and
  // no nonempty subset has a perfect-square product.
  explicit FieldDescriptor(std::span<const long> radicands);
  FieldDescriptor(std::initializer_list<long> radicands)
      : FieldDescriptor(std::span<const long>(radicands.begin(), radicands.size())) {}

  std::size_t count() const { return count_; }
  std::size_t degree() const { return std::size_t{1} << count_; }
  long radicand(std::size_t i) const { return radicands_[i]; }
  std::span<const long> radicands() const { return {radicands_.data(), count_}; }

  // Product of the radicands selected by `mask`.
  long mask_product(unsigned mask) const;

  std::string to_string() const;

  friend bool operator==(const FieldDescriptor& a, const FieldDescriptor& b) {
    return a.count_ == b.count_ && a.radicands_ == b.radicands_;
  }

 private:
  std::array<long, kMaxRadicands> radicands_{};
  std::size_t count_ = 0;
};

// A field automorphism fixing Q, given by the sign it puts on each sqrt(d).
// Radicands not mentioned are fixed.
class GaloisSigns {
 public:
  GaloisSigns() = default;
  GaloisSigns(std::initializer_list<std::pair<long, int>> signs);

  void set(long radicand, int sign);
  int sign(long radicand) const;
  bool is_identity() const;
  // Sign picked up by the basis element with the given mask.
  int basis_sign(const FieldDescriptor& f, unsigned mask) const;

  // Coordinatewise product; applying the result equals applying both.
  friend GaloisSigns operator*(const GaloisSigns& a, const GaloisSigns& b);
  friend bool operator==(const GaloisSigns& a, const GaloisSigns& b);

  const std::vector<std::pair<long, int>>& entries() const { return flips_; }
  std::string to_string() const;

 private:
  // Sorted by radicand; only radicands with sign -1 are stored.
  std::vector<std::pair<long, int>> flips_;
};

class FieldElem {
 public:
  using Coords = boost::container::small_vector<BigRational, 4>;

  FieldElem() : coords_(1) {}
  explicit FieldElem(const FieldDescriptor& f) : field_(f), coords_(f.degree()) {}
  FieldElem(const FieldDescriptor& f, const BigRational& q);
  FieldElem(const FieldDescriptor& f, Coords coords);
  // Rational embedded in Q; mixes with elements of any field. Inputs need not
  // be in lowest terms.
  FieldElem(const BigRational& q) : coords_{q} { coords_[0].canonicalize(); }  // NOLINT(google-explicit-constructor)
  FieldElem(long q) : coords_{BigRational(q)} {}   // NOLINT(google-explicit-constructor)

  // The basis element prod_{i in mask} sqrt(d_i).
  static FieldElem basis(const FieldDescriptor& f, unsigned mask);

  const FieldDescriptor& field() const { return field_; }
  const Coords& coords() const { return coords_; }
  const BigRational& coord(unsigned mask) const { return coords_[mask]; }

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;
  // Rational part; only meaningful when is_rational().
  const BigRational& rational() const { return coords_[0]; }

  // Re-expresses an element of Q (or of a subfield with matching radicands)
  // in the larger field `f`.
  FieldElem embedded_in(const FieldDescriptor& f) const;

  FieldElem inverse() const;
  FieldElem galois(const GaloisSigns& s) const;
  // Rational number N with e * (product of all nontrivial conjugates) = N.
  BigRational norm() const;

  FieldElem& operator+=(const FieldElem& o);
  FieldElem& operator-=(const FieldElem& o);
  FieldElem& operator*=(const FieldElem& o);
  FieldElem& operator/=(const FieldElem& o);
  FieldElem operator-() const;
  // *this += a * b without a temporary in the rational case.
  void add_product(const FieldElem& a, const FieldElem& b);

  friend FieldElem operator+(FieldElem a, const FieldElem& b) { return a += b; }
  friend FieldElem operator-(FieldElem a, const FieldElem& b) { return a -= b; }
  friend FieldElem operator*(const FieldElem& a, const FieldElem& b);
  friend FieldElem operator/(const FieldElem& a, const FieldElem& b) { return a * b.inverse(); }
  friend bool operator==(const FieldElem& a, const FieldElem& b);

  std::size_t hash() const;
  // `q0 + q1*sqrt(d1) + q2*sqrt(d2) + q3*sqrt(d1)*sqrt(d2)`, zero terms omitted.
  std::string to_string() const;

 private:
  // Brings `o` into this element's field, widening Q-valued operands.
  void unify(const FieldElem& o);

  FieldDescriptor field_;
  Coords coords_;
};

std::ostream& operator<<(std::ostream& os, const FieldElem& e);

// Element of `f` whose square is d. Throws NotRepresentable when d is not a
// product of radicands times a rational square.
FieldElem sqrt_symbol(long d, const FieldDescriptor& f);

// Embedding of the field into F_p, sending sqrt(d_i) to a chosen square root
// mod p. Used for modular shortcuts (gcd degree bounds); never for answers.
class ModularImage {
 public:
  // Picks the first prime below `start` for which all radicands are squares.
  static ModularImage for_field(const FieldDescriptor& f, std::uint64_t start);

  std::uint64_t prime() const { return p_; }
  // Throws DivisionByZero when a coordinate denominator vanishes mod p.
  std::uint64_t map(const FieldElem& e) const;

 private:
  std::uint64_t p_ = 0;
  std::array<std::uint64_t, 4> basis_{};  // images of the basis elements
};

namespace modp {
std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t pow(std::uint64_t a, std::uint64_t e, std::uint64_t p);
std::uint64_t inv(std::uint64_t a, std::uint64_t p);
}  // namespace modp

}  // namespace ivl

template <>
struct std::hash<ivl::FieldElem> {
  std::size_t operator()(const ivl::FieldElem& e) const { return e.hash(); }
};
