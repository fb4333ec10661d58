#pragma once

// Automorphisms of coefficient-extended rational function fields: a Galois
// sign pattern on the coefficients paired with a variable substitution.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "ivl/matgroup.hpp"
#include "ivl/ratfunc.hpp"

namespace ivl {

class FieldAutomorphism {
 public:
  FieldAutomorphism() = default;
  explicit FieldAutomorphism(VarSet vars) : vars_(std::move(vars)), subst_(vars_.size()) {}
  // `subst` is indexed by variable; unmapped variables are fixed.
  FieldAutomorphism(VarSet vars, GaloisSigns signs, Substitution subst);

  static FieldAutomorphism identity(const VarSet& vars) { return FieldAutomorphism(vars); }

  const VarSet& vars() const { return vars_; }
  const GaloisSigns& signs() const { return signs_; }
  const Substitution& subst() const { return subst_; }
  // Image of a variable (the variable itself when unmapped).
  RatFunc image(std::size_t var) const;
  // Variables with an explicit image, ascending.
  std::vector<std::size_t> domain() const;

  std::string to_string() const;

 private:
  VarSet vars_;
  GaloisSigns signs_;
  Substitution subst_;
};

// Galois action on the coefficients, then substitution.
RatFunc apply(const FieldAutomorphism& a, const RatFunc& f);

// apply(compose(a, b), f) = apply(a, apply(b, f)).
FieldAutomorphism compose(const FieldAutomorphism& a, const FieldAutomorphism& b);

// Same signs and exactly equal images on every variable.
bool same_automorphism(const FieldAutomorphism& a, const FieldAutomorphism& b);
bool is_identity(const FieldAutomorphism& a);

constexpr std::size_t kAutomorphismOrderCap = 64;

// Throws OrderExceedsCap.
std::size_t order_of(const FieldAutomorphism& a, std::size_t cap = kAutomorphismOrderCap);

// Columns: x_j -> sum_i a_ij x_i. Rows reads the matrix transposed and
// exists only as a negative control for check_representation.
enum class MatrixConvention { Columns, Rows };

// `vars` lists the variables acted on, in matrix order. Throws NotInvertible.
FieldAutomorphism from_matrix(const RatMatrix& m, const VarSet& context, const std::vector<std::size_t>& vars,
                              MatrixConvention conv = MatrixConvention::Columns);

// x_j -> coeffs[j] * prod_i x_i^exps[i][j]. Throws NotUnimodular,
// ZeroCoefficient.
FieldAutomorphism monomial_automorphism(const std::vector<std::vector<long>>& exps,
                                        const std::vector<RatFunc>& coeffs, const VarSet& context,
                                        const std::vector<std::size_t>& vars);

struct RepresentationReport {
  bool ok = true;
  std::size_t pairs_checked = 0;
  // First offending pair, as indices into the closure.
  std::optional<std::pair<std::size_t, std::size_t>> counterexample;
};

// Checks from_matrix(m1*m2) = compose(from_matrix(m1), from_matrix(m2)) for
// pairs from the closure of ms; at most `max_pairs` pairs, taken in a fixed
// pseudorandom order when the closure is larger.
RepresentationReport check_representation(const std::vector<RatMatrix>& ms,
                                          MatrixConvention conv = MatrixConvention::Columns,
                                          std::size_t max_pairs = 400);

bool is_invariant(const FieldAutomorphism& a, const RatFunc& f);
bool is_invariant_all(const std::vector<FieldAutomorphism>& gens, const RatFunc& f);

// Rank of the Jacobian of fs with respect to `wrt` at the point (indexed by
// variable). Throws PoleAtPoint.
std::size_t jacobian_rank_at(const std::vector<RatFunc>& fs, const std::vector<std::size_t>& wrt,
                             const std::vector<FieldElem>& point);

struct RankCertificate {
  std::size_t rank = 0;       // best rank seen
  bool full = false;          // rank == number of functions
  unsigned attempts = 0;
  std::vector<BigRational> point;  // point achieving `rank`
};

// Random rational points with numerators and denominators bounded by
// `bound`; stops at the first full-rank point. A shortfall after all retries
// is inconclusive, not a proof of dependence.
RankCertificate certify_independence(const std::vector<RatFunc>& fs, const std::vector<std::size_t>& wrt,
                                     unsigned retries = 50, long bound = 1000, std::uint64_t seed = 0x1ac0b1);

class ActionGroup {
 public:
  // Throws GroupTooLarge when the closure exceeds cap.
  ActionGroup(std::vector<std::pair<std::string, FieldAutomorphism>> gens, std::size_t cap = kAutomorphismOrderCap);

  const std::vector<std::pair<std::string, FieldAutomorphism>>& generators() const { return gens_; }
  const std::vector<FieldAutomorphism>& elements() const { return elems_; }
  std::size_t order() const { return elems_.size(); }

 private:
  std::vector<std::pair<std::string, FieldAutomorphism>> gens_;
  std::vector<FieldAutomorphism> elems_;
};

// Product of the distinct images of `top` under the group, made monic and
// checked invariant under every generator. Throws NotAffineAction when some
// generator does not send top to a*top + b with a, b free of top.
RatFunc affine_orbit_invariant(const ActionGroup& g, std::size_t top);

}  // namespace ivl
