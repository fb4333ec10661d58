#include "ivl/matgroup.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <unordered_set>

namespace ivl {

RatMatrix::RatMatrix(std::initializer_list<std::initializer_list<BigRational>> rows) : n_(rows.size()) {
  a_.reserve(n_ * n_);
  for (const auto& r : rows) {
    if (r.size() != n_) throw Error("matrix rows must form a square array");
    a_.insert(a_.end(), r.begin(), r.end());
  }
}

RatMatrix RatMatrix::from_rows(const std::vector<std::vector<BigRational>>& rows) {
  RatMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) throw Error("matrix rows must form a square array");
    for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

RatMatrix RatMatrix::identity(std::size_t n) {
  RatMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

BigRational RatMatrix::determinant() const {
  std::vector<BigRational> w = a_;
  BigRational det = 1;
  for (std::size_t c = 0; c < n_; ++c) {
    std::size_t piv = c;
    while (piv < n_ && w[piv * n_ + c] == 0) ++piv;
    if (piv == n_) return 0;
    if (piv != c) {
      for (std::size_t j = 0; j < n_; ++j) std::swap(w[piv * n_ + j], w[c * n_ + j]);
      det = -det;
    }
    det *= w[c * n_ + c];
    for (std::size_t r = c + 1; r < n_; ++r) {
      if (w[r * n_ + c] == 0) continue;
      BigRational f = w[r * n_ + c] / w[c * n_ + c];
      for (std::size_t j = c; j < n_; ++j) w[r * n_ + j] -= f * w[c * n_ + j];
    }
  }
  return det;
}

RatMatrix RatMatrix::inverse() const {
  RatMatrix w = *this, inv = identity(n_);
  for (std::size_t c = 0; c < n_; ++c) {
    std::size_t piv = c;
    while (piv < n_ && w(piv, c) == 0) ++piv;
    if (piv == n_) throw NotInvertible("matrix is singular");
    for (std::size_t j = 0; j < n_; ++j) {
      std::swap(w(piv, j), w(c, j));
      std::swap(inv(piv, j), inv(c, j));
    }
    BigRational p = w(c, c);
    for (std::size_t j = 0; j < n_; ++j) {
      w(c, j) /= p;
      inv(c, j) /= p;
    }
    for (std::size_t r = 0; r < n_; ++r) {
      if (r == c || w(r, c) == 0) continue;
      BigRational f = w(r, c);
      for (std::size_t j = 0; j < n_; ++j) {
        w(r, j) -= f * w(c, j);
        inv(r, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix t(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

bool RatMatrix::is_identity() const { return *this == identity(n_); }

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
  if (a.n_ != b.n_) throw Error("matrix dimensions differ");
  RatMatrix c(a.n_);
  for (std::size_t i = 0; i < a.n_; ++i) {
    for (std::size_t k = 0; k < a.n_; ++k) {
      const BigRational& x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < a.n_; ++j) c(i, j) += x * b(k, j);
    }
  }
  return c;
}

RatMatrix RatMatrix::operator-() const {
  RatMatrix r = *this;
  for (auto& x : r.a_) x = -x;
  return r;
}

RatMatrix operator*(const BigRational& c, const RatMatrix& m) {
  RatMatrix r = m;
  for (auto& x : r.a_) x *= c;
  return r;
}

std::size_t RatMatrix::hash() const {
  std::size_t h = n_;
  for (const auto& x : a_) {
    long num = mpz_get_si(x.get_num_mpz_t());
    long den = mpz_get_si(x.get_den_mpz_t());
    h = h * 1000003u ^ static_cast<std::size_t>(num * 31 + den);
  }
  return h;
}

std::string RatMatrix::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < n_; ++i) {
    s += i ? ",[" : "[";
    for (std::size_t j = 0; j < n_; ++j) {
      if (j) s += ",";
      s += (*this)(i, j).get_str();
    }
    s += "]";
  }
  return s + "]";
}

std::ostream& operator<<(std::ostream& os, const RatMatrix& m) { return os << m.to_string(); }

RatMatrix parse_matrix(std::string_view text) {
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto expect = [&](char c) {
    skip();
    if (pos >= text.size() || text[pos] != c) {
      throw ParseError(std::string("expected '") + c + "' at offset " + std::to_string(pos) + " in matrix");
    }
    ++pos;
  };
  std::vector<std::vector<BigRational>> rows;
  expect('[');
  for (;;) {
    expect('[');
    std::vector<BigRational> row;
    for (;;) {
      skip();
      std::size_t start = pos;
      while (pos < text.size() && (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '-' ||
                                   text[pos] == '+' || text[pos] == '/')) {
        ++pos;
      }
      row.push_back(parse_rational(text.substr(start, pos - start)));
      skip();
      if (pos < text.size() && text[pos] == ',') {
        ++pos;
        continue;
      }
      break;
    }
    expect(']');
    rows.push_back(std::move(row));
    skip();
    if (pos < text.size() && text[pos] == ',') {
      ++pos;
      continue;
    }
    break;
  }
  expect(']');
  skip();
  if (pos != text.size()) throw ParseError("trailing text after matrix");
  for (const auto& r : rows) {
    if (r.size() != rows.size()) throw ParseError("matrix rows must form a square array");
  }
  return RatMatrix::from_rows(rows);
}

bool MatrixGroup::contains(const RatMatrix& m) const {
  return std::find(elems_.begin(), elems_.end(), m) != elems_.end();
}

std::map<std::size_t, std::size_t> MatrixGroup::element_order_histogram() const {
  std::map<std::size_t, std::size_t> hist;
  for (const auto& e : elems_) ++hist[matrix_order(e, elems_.size())];
  return hist;
}

MatrixGroup close(const std::vector<RatMatrix>& gens, std::size_t cap) {
  if (cap == 0) throw Error("group cap must be at least 1");
  std::size_t n = gens.empty() ? 1 : gens.front().dim();
  for (const auto& g : gens) {
    if (g.dim() != n) throw Error("generators have different dimensions");
    if (!g.is_invertible()) throw NotInvertible("generator is singular");
  }
  MatrixGroup grp;
  grp.gens_ = gens;
  std::unordered_set<RatMatrix, RatMatrixHash> seen;
  RatMatrix id = RatMatrix::identity(n);
  seen.insert(id);
  grp.elems_.push_back(id);
  // Right multiplication by generators reaches every element of a finite
  // group, since inverses are positive powers.
  for (std::size_t head = 0; head < grp.elems_.size(); ++head) {
    for (const auto& g : gens) {
      RatMatrix next = grp.elems_[head] * g;
      if (seen.insert(next).second) {
        if (grp.elems_.size() >= cap) {
          throw GroupTooLarge("closure exceeds " + std::to_string(cap) + " elements");
        }
        grp.elems_.push_back(std::move(next));
      }
    }
  }
  return grp;
}

RatMatrix conjugate(const RatMatrix& t, const RatMatrix& m) { return t * m * t.inverse(); }

std::size_t matrix_order(const RatMatrix& m, std::size_t cap) {
  if (!m.is_invertible()) throw NotInvertible("matrix is singular");
  RatMatrix p = m;
  for (std::size_t k = 1; k <= cap; ++k) {
    if (p.is_identity()) return k;
    p = p * m;
  }
  throw OrderExceedsCap("matrix order exceeds " + std::to_string(cap));
}

namespace catalog {

namespace {

const BigRational h(1, 2);

std::map<std::string, RatMatrix> build_matrices() {
  std::map<std::string, RatMatrix> m;
  m["i"] = {{0, 1, 0, 0}, {-1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, -1, 0}};
  m["ij"] = {{0, 0, 0, -1}, {0, 0, -1, 0}, {0, 1, 0, 0}, {1, 0, 0, 0}};
  m["alpha"] = h * RatMatrix{{-1, -1, -1, 1}, {1, -1, 1, 1}, {1, -1, -1, -1}, {-1, -1, 1, -1}};
  m["alpha0"] = {{-1, 0, 0, 0}, {0, 0, -1, 0}, {0, -1, 0, 0}, {0, 0, 0, 1}};
  m["alpha1"] = h * RatMatrix{{-1, -1, -1, -1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  m["k1alpha0"] = {{0, 0, 0, 1}, {0, 1, 0, 0}, {0, 0, -1, 0}, {1, 0, 0, 0}};
  m["T"] = {{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
  m["lambda1"] = {{0, -1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, -1, 0}};
  m["lambda2"] = {{0, 0, -1, 0}, {0, 0, 0, -1}, {1, 0, 0, 0}, {0, 1, 0, 0}};
  m["sigma"] = h * RatMatrix{{-1, 1, 1, 1}, {-1, -1, -1, 1}, {-1, 1, -1, -1}, {-1, -1, 1, -1}};
  m["tau"] = {{0, 0, -1, 0}, {0, -1, 0, 0}, {-1, 0, 0, 0}, {0, 0, 0, 1}};
  m["lambda3"] = h * RatMatrix{{-1, 1, 1, -1}, {-1, -1, -1, -1}, {-1, 1, -1, 1}, {1, 1, -1, -1}};
  m["lambda4"] = {{1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, -1, 0}, {0, 1, 0, 0}};
  m["A.sigma"] = {{0, 0, 0, -1}, {1, 0, 0, -1}, {0, 1, 0, -1}, {0, 0, 1, -1}};
  m["A.tau1"] = {{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
  m["A.tau2"] = -m["A.tau1"];
  m["A.tau3"] = {{0, 0, 1, 0}, {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}};
  m["A.lambda"] = -RatMatrix::identity(4);
  return m;
}

}  // namespace

const std::map<std::string, RatMatrix>& matrices() {
  static const auto m = build_matrices();
  return m;
}

const RatMatrix& matrix(std::string_view name) {
  auto it = matrices().find(std::string(name));
  if (it == matrices().end()) throw Error("unknown catalog matrix '" + std::string(name) + "'");
  return it->second;
}

const std::map<std::string, std::vector<std::string>>& groups() {
  static const std::map<std::string, std::vector<std::string>> g = {
      {"Q8", {"i", "ij"}},
      {"4.33.3", {"lambda1", "lambda2", "sigma"}},
      {"4.33.6", {"lambda1", "lambda2", "sigma", "tau"}},
      {"4.33.7", {"lambda1", "lambda2", "sigma", "lambda3"}},
      {"4.33.11", {"lambda1", "lambda2", "sigma", "lambda3", "lambda4"}},
      {"A5.std", {"A.sigma", "A.tau3"}},
      {"S5.std", {"A.sigma", "A.tau1"}},
      {"S5.twist", {"A.sigma", "A.tau2"}},
      {"A5xC2", {"A.sigma", "A.tau3", "A.lambda"}},
      {"S5xC2", {"A.sigma", "A.tau1", "A.lambda"}},
  };
  return g;
}

std::vector<RatMatrix> group_generators(std::string_view name) {
  auto it = groups().find(std::string(name));
  if (it == groups().end()) throw Error("unknown catalog group '" + std::string(name) + "'");
  std::vector<RatMatrix> out;
  for (const auto& n : it->second) out.push_back(matrix(n));
  return out;
}

}  // namespace catalog

}  // namespace ivl
