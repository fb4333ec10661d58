#include "ivl/ratfunc.hpp"

#include <algorithm>
#include <random>

namespace ivl {

RatFunc::RatFunc(MultiPoly p) : num_(std::move(p)), den_(num_.vars(), FieldElem(1)) {}

RatFunc::RatFunc(MultiPoly num, MultiPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (!(num_.vars() == den_.vars())) throw VarSetMismatch("numerator and denominator over different variables");
  if (den_.is_zero()) throw DivisionByZero("rational function with zero denominator");
  if (num_.is_zero()) {
    den_ = MultiPoly(num_.vars(), FieldElem(1));
    return;
  }
  if (!den_.is_constant()) {
    MultiPoly g = multivariate_gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = *num_.divide_exact(g);
      den_ = *den_.divide_exact(g);
    }
  }
  normalize_unit();
}

void RatFunc::normalize_unit() {
  if (den_.leading_coeff().is_one()) return;
  FieldElem inv = den_.leading_coeff().inverse();
  num_ = num_.scaled(inv);
  den_ = den_.scaled(inv);
}

RatFunc RatFunc::variable(const VarSet& vars, std::size_t index) { return RatFunc(MultiPoly::variable(vars, index)); }

RatFunc RatFunc::variable(const VarSet& vars, std::string_view name) { return variable(vars, vars.require(name)); }

std::vector<std::size_t> RatFunc::support() const {
  auto a = num_.support(), b = den_.support();
  std::vector<std::size_t> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

RatFunc RatFunc::operator-() const { return RatFunc(-num_, den_, Raw{}); }

namespace {

MultiPoly quotient(const MultiPoly& a, const MultiPoly& b) {
  if (b.is_one()) return a;
  auto q = a.divide_exact(b);
  if (!q) throw Error("internal: expected exact polynomial division");
  return *q;
}

}  // namespace

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_.is_one() && b.den_.is_one()) return RatFunc(a.num_ + b.num_);
  if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
  // With g = gcd(b1, b2) only g can share factors with the new numerator.
  MultiPoly g = multivariate_gcd(a.den_, b.den_);
  MultiPoly ad = quotient(a.den_, g), bd = quotient(b.den_, g);
  MultiPoly num = a.num_ * bd + b.num_ * ad;
  if (num.is_zero()) return RatFunc(a.vars());
  MultiPoly den = ad * b.den_;
  if (!g.is_constant()) {
    MultiPoly h = multivariate_gcd(num, g);
    if (!h.is_constant()) {
      num = quotient(num, h);
      den = quotient(den, h);
    }
  }
  RatFunc r(std::move(num), std::move(den), RatFunc::Raw{});
  r.normalize_unit();
  return r;
}

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero() || b.is_zero()) return RatFunc(a.vars());
  if (a.den_.is_one() && b.den_.is_one()) return RatFunc(a.num_ * b.num_);
  MultiPoly g1 = multivariate_gcd(a.num_, b.den_);
  MultiPoly g2 = multivariate_gcd(b.num_, a.den_);
  MultiPoly num = quotient(a.num_, g1) * quotient(b.num_, g2);
  MultiPoly den = quotient(a.den_, g2) * quotient(b.den_, g1);
  RatFunc r(std::move(num), std::move(den), RatFunc::Raw{});
  r.normalize_unit();
  return r;
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of the zero rational function");
  RatFunc r(den_, num_, Raw{});
  r.normalize_unit();
  return r;
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }

RatFunc RatFunc::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  RatFunc r(num_.pow(static_cast<unsigned>(e)), den_.pow(static_cast<unsigned>(e)), Raw{});
  r.normalize_unit();
  return r;
}

RatFunc RatFunc::galois(const GaloisSigns& s) const {
  if (s.is_identity()) return *this;
  RatFunc r(num_.galois(s), den_.galois(s), Raw{});
  r.normalize_unit();
  return r;
}

std::string RatFunc::to_string() const {
  if (den_.is_one()) return num_.to_string();
  std::string n = num_.to_string();
  if (num_.size() > 1) n = "(" + n + ")";
  std::string d = den_.to_string();
  if (den_.size() > 1 || !den_.terms().front().coeff.is_one() ||
      den_.terms().front().mono.entries().size() > 1) {
    d = "(" + d + ")";
  }
  return n + "/" + d;
}

std::ostream& operator<<(std::ostream& os, const RatFunc& f) { return os << f.to_string(); }

// ---------------------------------------------------------------------------
// Substitution

namespace {

struct SubstPlan {
  std::size_t var;
  const MultiPoly* p;
  const MultiPoly* q;
  std::vector<MultiPoly> p_pow, q_pow;
};

// Sum over terms of P of c * prod p_v^e_v * q_v^(d_v - e_v), with d_v the
// degree of P in v. Variables without an image keep their monomial.
MultiPoly homogenized_image(const MultiPoly& poly, std::vector<SubstPlan>& plans, std::size_t level,
                            const std::vector<Monomial::Exp>& degrees, const VarSet& target) {
  if (level == plans.size()) {
    // Remaining monomials involve only fixed variables.
    std::vector<MultiPoly::Term> terms(poly.terms().begin(), poly.terms().end());
    return MultiPoly(target, std::move(terms));
  }
  SubstPlan& plan = plans[level];
  auto v = static_cast<Monomial::Var>(plan.var);
  Monomial::Exp d = degrees[level];
  if (d == 0) return homogenized_image(poly, plans, level + 1, degrees, target);
  std::vector<std::vector<MultiPoly::Term>> buckets(d + 1);
  for (const auto& t : poly.terms()) buckets[t.mono.degree(v)].push_back({t.mono.without(v), t.coeff});
  MultiPoly one(target, FieldElem(1));
  while (plan.p_pow.size() <= d) plan.p_pow.push_back(plan.p_pow.empty() ? one : plan.p_pow.back() * *plan.p);
  while (plan.q_pow.size() <= d) plan.q_pow.push_back(plan.q_pow.empty() ? one : plan.q_pow.back() * *plan.q);
  MultiPoly acc(target);
  for (Monomial::Exp k = 0; k <= d; ++k) {
    if (buckets[k].empty()) continue;
    MultiPoly part(poly.vars(), std::move(buckets[k]));
    MultiPoly inner = homogenized_image(part, plans, level + 1, degrees, target);
    if (plan.q->is_one()) {
      acc += inner * plan.p_pow[k];
    } else {
      acc += inner * (plan.p_pow[k] * plan.q_pow[d - k]);
    }
  }
  return acc;
}

}  // namespace

RatFunc substitute(const RatFunc& f, const Substitution& m) {
  const VarSet& source = f.vars();
  if (m.size() > source.size()) throw VarSetMismatch("substitution longer than the variable set");
  std::optional<VarSet> target;
  for (const auto& img : m) {
    if (!img) continue;
    if (!target) {
      target = img->vars();
    } else if (!(*target == img->vars())) {
      throw VarSetMismatch("substitution images over different variable sets");
    }
  }
  if (!target) return f;
  // Fixed variables must exist in the target too; we keep their indices, so
  // the target must be the same context.
  auto supp = f.support();
  bool any = false;
  for (auto v : supp) {
    if (v < m.size() && m[v]) {
      any = true;
    } else if (!(source == *target)) {
      throw VarSetMismatch("variable '" + source.name(v) + "' has no image in the target variable set");
    }
  }
  if (!any && source == *target) return f;

  std::vector<SubstPlan> plans;
  for (auto v : supp) {
    if (v < m.size() && m[v]) plans.push_back({v, &m[v]->num(), &m[v]->den(), {}, {}});
  }
  auto degrees_of = [&](const MultiPoly& p) {
    std::vector<Monomial::Exp> d;
    for (const auto& pl : plans) d.push_back(p.degree(pl.var));
    return d;
  };
  auto dn = degrees_of(f.num()), dd = degrees_of(f.den());
  MultiPoly num = homogenized_image(f.num(), plans, 0, dn, *target);
  MultiPoly den = homogenized_image(f.den(), plans, 0, dd, *target);
  if (den.is_zero()) throw DenominatorVanishes("composed denominator is identically zero");
  // Restore the q_v powers cleared by homogenization.
  for (std::size_t i = 0; i < plans.size(); ++i) {
    if (plans[i].q->is_one() || dn[i] == dd[i]) continue;
    if (dd[i] > dn[i]) {
      num = num * plans[i].q->pow(dd[i] - dn[i]);
    } else {
      den = den * plans[i].q->pow(dn[i] - dd[i]);
    }
  }
  if (num.is_zero()) return RatFunc(*target);
  return RatFunc(std::move(num), std::move(den));
}

RatFunc differentiate(const RatFunc& f, std::size_t var) {
  MultiPoly dn = f.num().derivative(var);
  if (f.den().is_constant()) return RatFunc(dn, f.den());
  MultiPoly dd = f.den().derivative(var);
  if (dd.is_zero()) return RatFunc(dn, f.den());
  // (n' d - n d') / d^2, with gcd(d, d') pulled out first.
  MultiPoly g = multivariate_gcd(f.den(), dd);
  MultiPoly d_red = *f.den().divide_exact(g);
  MultiPoly dd_red = *dd.divide_exact(g);
  return RatFunc(dn * d_red - f.num() * dd_red, f.den() * d_red);
}

FieldElem eval(const RatFunc& f, const std::vector<FieldElem>& point) {
  FieldElem d = f.den().eval(point);
  if (d.is_zero()) throw PoleAtPoint("denominator vanishes at the evaluation point");
  return f.num().eval(point) / d;
}

MultiPoly difference_numerator(const RatFunc& f, const RatFunc& g) {
  if (f.den() == g.den()) return f.num() - g.num();
  return f.num() * g.den() - g.num() * f.den();
}

bool eq_exact(const RatFunc& f, const RatFunc& g) {
  if (!(f.vars() == g.vars())) throw VarSetMismatch("comparing rational functions over different variables");
  return difference_numerator(f, g).is_zero();
}

ProbableEqResult probable_eq_detail(const RatFunc& f, const RatFunc& g, const ProbableEqOptions& opt) {
  if (!(f.vars() == g.vars())) throw VarSetMismatch("comparing rational functions over different variables");
  ProbableEqResult res;
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<long> dist(-opt.bound, opt.bound);
  std::vector<FieldElem> point(f.vars().size());
  auto supp_f = f.support(), supp_g = g.support();
  std::vector<std::size_t> supp;
  std::set_union(supp_f.begin(), supp_f.end(), supp_g.begin(), supp_g.end(), std::back_inserter(supp));
  for (unsigned t = 0; t < std::max(1u, opt.trials); ++t) {
    for (unsigned attempt = 0; attempt <= opt.retries; ++attempt) {
      for (auto v : supp) point[v] = FieldElem(BigRational(dist(rng)));
      FieldElem fd = f.den().eval(point);
      if (fd.is_zero()) continue;
      FieldElem gd = g.den().eval(point);
      if (gd.is_zero()) continue;
      ++res.trials_run;
      if (!(f.num().eval(point) * gd == g.num().eval(point) * fd)) {
        res.equal = false;
        for (std::size_t v = 0; v < point.size(); ++v) res.witness.push_back(point[v].rational());
        return res;
      }
      break;
    }
  }
  return res;
}

bool probable_eq(const RatFunc& f, const RatFunc& g, unsigned trials, long bound) {
  ProbableEqOptions opt;
  opt.trials = trials;
  opt.bound = bound;
  return probable_eq_detail(f, g, opt).equal;
}

}  // namespace ivl
