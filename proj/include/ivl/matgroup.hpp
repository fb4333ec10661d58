#pragma once

// Exact rational matrices, closures of finite matrix groups, and the catalog
// of named generators.

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ivl/coeff_field.hpp"

namespace ivl {

class RatMatrix {
 public:
  RatMatrix() = default;
  explicit RatMatrix(std::size_t n) : n_(n), a_(n * n) {}
  // Throws Error unless rows form a square array.
  RatMatrix(std::initializer_list<std::initializer_list<BigRational>> rows);
  static RatMatrix from_rows(const std::vector<std::vector<BigRational>>& rows);
  static RatMatrix identity(std::size_t n);

  std::size_t dim() const { return n_; }
  const BigRational& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  BigRational& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }

  BigRational determinant() const;
  bool is_invertible() const { return determinant() != 0; }
  // Throws NotInvertible.
  RatMatrix inverse() const;
  RatMatrix transpose() const;
  bool is_identity() const;

  friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
  RatMatrix operator-() const;
  friend RatMatrix operator*(const BigRational& c, const RatMatrix& m);
  friend bool operator==(const RatMatrix& a, const RatMatrix& b) { return a.n_ == b.n_ && a.a_ == b.a_; }

  std::size_t hash() const;
  // `[[a,b],[c,d]]` with rational literals.
  std::string to_string() const;

 private:
  std::size_t n_ = 0;
  std::vector<BigRational> a_;
};

std::ostream& operator<<(std::ostream& os, const RatMatrix& m);

// Parses the `[[a,b],[c,d]]` text form. Throws ParseError.
RatMatrix parse_matrix(std::string_view text);

struct RatMatrixHash {
  std::size_t operator()(const RatMatrix& m) const { return m.hash(); }
};

class MatrixGroup {
 public:
  const std::vector<RatMatrix>& generators() const { return gens_; }
  // Breadth-first order of discovery, identity first.
  const std::vector<RatMatrix>& elements() const { return elems_; }
  std::size_t order() const { return elems_.size(); }
  bool contains(const RatMatrix& m) const;
  // Element order -> number of elements of that order.
  std::map<std::size_t, std::size_t> element_order_histogram() const;

 private:
  friend MatrixGroup close(const std::vector<RatMatrix>& gens, std::size_t cap);
  std::vector<RatMatrix> gens_;
  std::vector<RatMatrix> elems_;
};

constexpr std::size_t kDefaultGroupCap = 10000;

// Throws NotInvertible, GroupTooLarge.
MatrixGroup close(const std::vector<RatMatrix>& gens, std::size_t cap = kDefaultGroupCap);

// t * m * t^-1. Throws NotInvertible.
RatMatrix conjugate(const RatMatrix& t, const RatMatrix& m);

// Least k >= 1 with m^k = I. Throws OrderExceedsCap, NotInvertible.
std::size_t matrix_order(const RatMatrix& m, std::size_t cap = 1000);

namespace catalog {

// Printed matrices by name: i, ij, alpha, alpha0, alpha1, k1alpha0, T,
// lambda1..lambda4, sigma, tau, and the appendix set A.sigma, A.tau1,
// A.tau2, A.tau3, A.lambda.
const std::map<std::string, RatMatrix>& matrices();
// Throws Error for unknown names.
const RatMatrix& matrix(std::string_view name);

// Group name -> generator names: Q8, 4.33.3, 4.33.6, 4.33.7, 4.33.11,
// A5.std, S5.std, S5.twist, A5xC2, S5xC2.
const std::map<std::string, std::vector<std::string>>& groups();
std::vector<RatMatrix> group_generators(std::string_view name);

}  // namespace catalog

}  // namespace ivl
