#include "ivl/field_action.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace ivl {

FieldAutomorphism::FieldAutomorphism(VarSet vars, GaloisSigns signs, Substitution subst)
    : vars_(std::move(vars)), signs_(std::move(signs)), subst_(std::move(subst)) {
  if (subst_.size() > vars_.size()) throw VarSetMismatch("substitution longer than the variable set");
  subst_.resize(vars_.size());
  for (const auto& img : subst_) {
    if (img && !(img->vars() == vars_)) throw VarSetMismatch("automorphism image over a different variable set");
  }
}

RatFunc FieldAutomorphism::image(std::size_t var) const {
  if (var < subst_.size() && subst_[var]) return *subst_[var];
  return RatFunc::variable(vars_, var);
}

std::vector<std::size_t> FieldAutomorphism::domain() const {
  std::vector<std::size_t> d;
  for (std::size_t i = 0; i < subst_.size(); ++i) {
    if (subst_[i]) d.push_back(i);
  }
  return d;
}

std::string FieldAutomorphism::to_string() const {
  std::ostringstream os;
  os << "galois(" << (signs_.is_identity() ? "" : signs_.to_string()) << ")";
  bool first = true;
  for (auto v : domain()) {
    os << (first ? " with " : ", ") << vars_.name(v) << " -> " << subst_[v]->to_string();
    first = false;
  }
  return os.str();
}

RatFunc apply(const FieldAutomorphism& a, const RatFunc& f) {
  RatFunc g = f.galois(a.signs());
  return substitute(g, a.subst());
}

FieldAutomorphism compose(const FieldAutomorphism& a, const FieldAutomorphism& b) {
  if (!(a.vars() == b.vars())) throw VarSetMismatch("composing automorphisms over different variable sets");
  Substitution s(a.vars().size());
  auto da = a.domain(), db = b.domain();
  std::vector<std::size_t> dom;
  std::set_union(da.begin(), da.end(), db.begin(), db.end(), std::back_inserter(dom));
  for (auto v : dom) s[v] = apply(a, b.image(v));
  return FieldAutomorphism(a.vars(), a.signs() * b.signs(), std::move(s));
}

bool same_automorphism(const FieldAutomorphism& a, const FieldAutomorphism& b) {
  if (!(a.signs() == b.signs())) return false;
  auto da = a.domain(), db = b.domain();
  std::vector<std::size_t> dom;
  std::set_union(da.begin(), da.end(), db.begin(), db.end(), std::back_inserter(dom));
  for (auto v : dom) {
    if (!eq_exact(a.image(v), b.image(v))) return false;
  }
  return true;
}

bool is_identity(const FieldAutomorphism& a) { return same_automorphism(a, FieldAutomorphism::identity(a.vars())); }

std::size_t order_of(const FieldAutomorphism& a, std::size_t cap) {
  FieldAutomorphism p = a;
  for (std::size_t k = 1; k <= cap; ++k) {
    if (is_identity(p)) return k;
    p = compose(a, p);
  }
  throw OrderExceedsCap("automorphism order exceeds " + std::to_string(cap));
}

FieldAutomorphism from_matrix(const RatMatrix& m, const VarSet& context, const std::vector<std::size_t>& vars,
                              MatrixConvention conv) {
  if (m.dim() != vars.size()) throw VarSetMismatch("matrix dimension does not match the number of variables");
  if (!m.is_invertible()) throw NotInvertible("matrix is singular");
  Substitution s(context.size());
  for (std::size_t j = 0; j < vars.size(); ++j) {
    std::vector<MultiPoly::Term> terms;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      const BigRational& c = conv == MatrixConvention::Columns ? m(i, j) : m(j, i);
      if (c != 0) terms.push_back({Monomial::var(static_cast<Monomial::Var>(vars[i])), FieldElem(c)});
    }
    s[vars[j]] = RatFunc(MultiPoly(context, std::move(terms)));
  }
  return FieldAutomorphism(context, GaloisSigns(), std::move(s));
}

FieldAutomorphism monomial_automorphism(const std::vector<std::vector<long>>& exps,
                                        const std::vector<RatFunc>& coeffs, const VarSet& context,
                                        const std::vector<std::size_t>& vars) {
  std::size_t n = vars.size();
  if (exps.size() != n || coeffs.size() != n) throw VarSetMismatch("monomial data does not match the variables");
  RatMatrix e(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (exps[i].size() != n) throw VarSetMismatch("exponent matrix must be square");
    for (std::size_t j = 0; j < n; ++j) e(i, j) = exps[i][j];
  }
  BigRational det = e.determinant();
  if (det != 1 && det != -1) throw NotUnimodular("exponent matrix has determinant " + det.get_str());
  Substitution s(context.size());
  for (std::size_t j = 0; j < n; ++j) {
    if (coeffs[j].is_zero()) throw ZeroCoefficient("monomial coefficient is zero");
    Monomial::Entries up, down;
    for (std::size_t i = 0; i < n; ++i) {
      long a = exps[i][j];
      auto v = static_cast<Monomial::Var>(vars[i]);
      if (a > 0) up.push_back({v, static_cast<Monomial::Exp>(a)});
      if (a < 0) down.push_back({v, static_cast<Monomial::Exp>(-a)});
    }
    MultiPoly num(context, {{Monomial::from_entries(up), FieldElem(1)}});
    MultiPoly den(context, {{Monomial::from_entries(down), FieldElem(1)}});
    s[vars[j]] = coeffs[j] * RatFunc(num, den);
  }
  return FieldAutomorphism(context, GaloisSigns(), std::move(s));
}

RepresentationReport check_representation(const std::vector<RatMatrix>& ms, MatrixConvention conv,
                                          std::size_t max_pairs) {
  RepresentationReport rep;
  if (ms.empty()) return rep;
  MatrixGroup g = close(ms);
  std::size_t n = ms.front().dim();
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i + 1));
  VarSet vars(names);
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  const auto& el = g.elements();
  std::vector<FieldAutomorphism> autos;
  autos.reserve(el.size());
  for (const auto& m : el) autos.push_back(from_matrix(m, vars, idx, conv));

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  if (el.size() * el.size() <= max_pairs) {
    for (std::size_t i = 0; i < el.size(); ++i) {
      for (std::size_t j = 0; j < el.size(); ++j) pairs.emplace_back(i, j);
    }
  } else {
    // Generator pairs first, then a fixed pseudorandom sample.
    for (std::size_t i = 0; i < el.size(); ++i) {
      for (std::size_t j = 0; j < el.size(); ++j) {
        bool gi = std::find(ms.begin(), ms.end(), el[i]) != ms.end();
        bool gj = std::find(ms.begin(), ms.end(), el[j]) != ms.end();
        if (gi && gj) pairs.emplace_back(i, j);
      }
    }
    std::mt19937_64 rng(0xc0ffee);
    std::uniform_int_distribution<std::size_t> pick(0, el.size() - 1);
    while (pairs.size() < max_pairs) pairs.emplace_back(pick(rng), pick(rng));
  }
  for (auto [i, j] : pairs) {
    ++rep.pairs_checked;
    FieldAutomorphism lhs = from_matrix(el[i] * el[j], vars, idx, conv);
    if (!same_automorphism(lhs, compose(autos[i], autos[j]))) {
      rep.ok = false;
      rep.counterexample = std::make_pair(i, j);
      return rep;
    }
  }
  return rep;
}

bool is_invariant(const FieldAutomorphism& a, const RatFunc& f) { return eq_exact(apply(a, f), f); }

bool is_invariant_all(const std::vector<FieldAutomorphism>& gens, const RatFunc& f) {
  return std::all_of(gens.begin(), gens.end(), [&](const FieldAutomorphism& a) { return is_invariant(a, f); });
}

namespace {

struct JacobianData {
  std::vector<const RatFunc*> fs;
  std::vector<std::size_t> wrt;
  std::vector<std::vector<MultiPoly>> dnum, dden;

  JacobianData(const std::vector<RatFunc>& funcs, const std::vector<std::size_t>& w) : wrt(w) {
    for (const auto& f : funcs) {
      fs.push_back(&f);
      dnum.emplace_back();
      dden.emplace_back();
      for (auto v : wrt) {
        dnum.back().push_back(f.num().derivative(v));
        dden.back().push_back(f.den().derivative(v));
      }
    }
  }

  std::size_t rank_at(const std::vector<FieldElem>& point) const {
    // Row k is D^2 * grad(N/D), which has the same rank as the Jacobian.
    std::vector<std::vector<FieldElem>> rows;
    for (std::size_t k = 0; k < fs.size(); ++k) {
      FieldElem d = fs[k]->den().eval(point);
      if (d.is_zero()) throw PoleAtPoint("denominator vanishes at the Jacobian point");
      FieldElem n = fs[k]->num().eval(point);
      std::vector<FieldElem> row;
      for (std::size_t c = 0; c < wrt.size(); ++c) {
        row.push_back(dnum[k][c].eval(point) * d - n * dden[k][c].eval(point));
      }
      rows.push_back(std::move(row));
    }
    std::size_t rank = 0;
    for (std::size_t c = 0; c < wrt.size() && rank < rows.size(); ++c) {
      std::size_t piv = rank;
      while (piv < rows.size() && rows[piv][c].is_zero()) ++piv;
      if (piv == rows.size()) continue;
      std::swap(rows[piv], rows[rank]);
      FieldElem inv = rows[rank][c].inverse();
      for (std::size_t r = rank + 1; r < rows.size(); ++r) {
        if (rows[r][c].is_zero()) continue;
        FieldElem f = rows[r][c] * inv;
        for (std::size_t j = c; j < wrt.size(); ++j) rows[r][j] -= f * rows[rank][j];
      }
      ++rank;
    }
    return rank;
  }
};

}  // namespace

std::size_t jacobian_rank_at(const std::vector<RatFunc>& fs, const std::vector<std::size_t>& wrt,
                             const std::vector<FieldElem>& point) {
  return JacobianData(fs, wrt).rank_at(point);
}

RankCertificate certify_independence(const std::vector<RatFunc>& fs, const std::vector<std::size_t>& wrt,
                                     unsigned retries, long bound, std::uint64_t seed) {
  RankCertificate cert;
  if (fs.empty()) {
    cert.full = true;
    return cert;
  }
  JacobianData jd(fs, wrt);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> num(-bound, bound), den(1, bound);
  const VarSet& vars = fs.front().vars();
  std::vector<FieldElem> point(vars.size());
  std::vector<BigRational> coords(vars.size());
  for (unsigned attempt = 0; attempt < retries; ++attempt) {
    ++cert.attempts;
    for (std::size_t v = 0; v < vars.size(); ++v) {
      coords[v] = BigRational(num(rng), den(rng));
      coords[v].canonicalize();
      point[v] = FieldElem(coords[v]);
    }
    std::size_t r = 0;
    try {
      r = jd.rank_at(point);
    } catch (const PoleAtPoint&) {
      continue;
    }
    if (r > cert.rank || cert.point.empty()) {
      cert.rank = std::max(cert.rank, r);
      cert.point = coords;
    }
    if (r == fs.size()) {
      cert.full = true;
      break;
    }
  }
  return cert;
}

ActionGroup::ActionGroup(std::vector<std::pair<std::string, FieldAutomorphism>> gens, std::size_t cap)
    : gens_(std::move(gens)) {
  if (gens_.empty()) throw Error("action group needs at least one generator");
  const VarSet& vars = gens_.front().second.vars();
  elems_.push_back(FieldAutomorphism::identity(vars));
  for (std::size_t head = 0; head < elems_.size(); ++head) {
    for (const auto& [name, g] : gens_) {
      FieldAutomorphism next = compose(elems_[head], g);
      bool known = std::any_of(elems_.begin(), elems_.end(),
                               [&](const FieldAutomorphism& e) { return same_automorphism(e, next); });
      if (known) continue;
      if (elems_.size() >= cap) throw GroupTooLarge("action group exceeds " + std::to_string(cap) + " elements");
      elems_.push_back(std::move(next));
    }
  }
}

RatFunc affine_orbit_invariant(const ActionGroup& g, std::size_t top) {
  const VarSet& vars = g.elements().front().vars();
  for (const auto& [name, a] : g.generators()) {
    RatFunc img = a.image(top);
    if (img.den().involves(top) || img.num().degree(top) != 1) {
      throw NotAffineAction("generator " + name + " does not act affinely on " + vars.name(top));
    }
  }
  std::vector<RatFunc> orbit;
  for (const auto& e : g.elements()) {
    RatFunc img = e.image(top);
    bool seen = std::any_of(orbit.begin(), orbit.end(), [&](const RatFunc& o) { return eq_exact(o, img); });
    if (!seen) orbit.push_back(std::move(img));
  }
  RatFunc prod(vars, FieldElem(1));
  for (const auto& o : orbit) prod *= o;
  prod = prod * RatFunc(vars, prod.num().leading_coeff().inverse());
  for (const auto& [name, a] : g.generators()) {
    if (!is_invariant(a, prod)) throw Error("orbit product is not invariant under " + name);
  }
  return prod;
}

}  // namespace ivl
