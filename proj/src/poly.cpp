#include "ivl/poly.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_map>

namespace ivl {

VarSet::VarSet(std::vector<std::string> names) {
  for (std::size_t i = 0; i < names.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (names[i] == names[j]) throw VarSetMismatch("duplicate variable '" + names[i] + "'");
    }
  }
  names_ = std::make_shared<const std::vector<std::string>>(std::move(names));
}

std::optional<std::size_t> VarSet::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_->size(); ++i) {
    if ((*names_)[i] == name) return i;
  }
  return std::nullopt;
}

std::size_t VarSet::require(std::string_view name) const {
  if (auto i = index_of(name)) return *i;
  throw VarSetMismatch("unknown variable '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Monomial

Monomial Monomial::var(Var v, Exp e) {
  Monomial m;
  if (e > 0) {
    m.entries_.push_back({v, e});
    m.total_ = e;
  }
  return m;
}

Monomial Monomial::from_entries(Entries entries) {
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.var < b.var; });
  Monomial m;
  for (const auto& e : entries) {
    if (e.exp == 0) continue;
    if (!m.entries_.empty() && m.entries_.back().var == e.var) {
      m.entries_.back().exp += e.exp;
    } else {
      m.entries_.push_back(e);
    }
    m.total_ += e.exp;
  }
  return m;
}

Monomial::Exp Monomial::degree(Var v) const {
  for (const auto& e : entries_) {
    if (e.var == v) return e.exp;
    if (e.var > v) break;
  }
  return 0;
}

bool Monomial::divides(const Monomial& o) const {
  if (total_ > o.total_) return false;
  std::size_t j = 0;
  for (const auto& e : entries_) {
    while (j < o.entries_.size() && o.entries_[j].var < e.var) ++j;
    if (j == o.entries_.size() || o.entries_[j].var != e.var || o.entries_[j].exp < e.exp) return false;
  }
  return true;
}

Monomial Monomial::quotient_of(const Monomial& o) const {
  Monomial r;
  std::size_t i = 0;
  for (const auto& e : o.entries_) {
    Exp sub = 0;
    if (i < entries_.size() && entries_[i].var == e.var) sub = entries_[i++].exp;
    if (e.exp > sub) r.entries_.push_back({e.var, e.exp - sub});
  }
  r.total_ = o.total_ - total_;
  return r;
}

Monomial Monomial::without(Var v) const {
  Monomial r;
  for (const auto& e : entries_) {
    if (e.var == v) continue;
    r.entries_.push_back(e);
    r.total_ += e.exp;
  }
  return r;
}

Monomial Monomial::gcd(const Monomial& a, const Monomial& b) {
  Monomial r;
  std::size_t j = 0;
  for (const auto& e : a.entries_) {
    while (j < b.entries_.size() && b.entries_[j].var < e.var) ++j;
    if (j < b.entries_.size() && b.entries_[j].var == e.var) {
      Exp x = std::min(e.exp, b.entries_[j].exp);
      r.entries_.push_back({e.var, x});
      r.total_ += x;
    }
  }
  return r;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r;
  r.entries_.reserve(a.entries_.size() + b.entries_.size());
  std::size_t i = 0, j = 0;
  while (i < a.entries_.size() && j < b.entries_.size()) {
    if (a.entries_[i].var == b.entries_[j].var) {
      r.entries_.push_back({a.entries_[i].var, a.entries_[i].exp + b.entries_[j].exp});
      ++i;
      ++j;
    } else if (a.entries_[i].var < b.entries_[j].var) {
      r.entries_.push_back(a.entries_[i++]);
    } else {
      r.entries_.push_back(b.entries_[j++]);
    }
  }
  for (; i < a.entries_.size(); ++i) r.entries_.push_back(a.entries_[i]);
  for (; j < b.entries_.size(); ++j) r.entries_.push_back(b.entries_[j]);
  r.total_ = a.total_ + b.total_;
  return r;
}

int grlex_compare(const Monomial& a, const Monomial& b) {
  if (a.total_ != b.total_) return a.total_ > b.total_ ? 1 : -1;
  std::size_t i = 0, j = 0;
  while (i < a.entries_.size() && j < b.entries_.size()) {
    const auto& x = a.entries_[i];
    const auto& y = b.entries_[j];
    if (x.var != y.var) return x.var < y.var ? 1 : -1;
    if (x.exp != y.exp) return x.exp > y.exp ? 1 : -1;
    ++i;
    ++j;
  }
  if (i < a.entries_.size()) return 1;
  if (j < b.entries_.size()) return -1;
  return 0;
}

std::size_t Monomial::hash() const {
  std::size_t h = total_;
  for (const auto& e : entries_) {
    h ^= (static_cast<std::size_t>(e.var) << 20 | e.exp) * 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

// ---------------------------------------------------------------------------
// MultiPoly

void demote_if_rational(FieldElem& e) {
  if (e.field().count() != 0 && e.is_rational()) e = FieldElem(e.rational());
}

namespace {

bool grlex_greater(const MultiPoly::Term& a, const MultiPoly::Term& b) {
  return grlex_compare(a.mono, b.mono) > 0;
}

}  // namespace

MultiPoly::MultiPoly(VarSet vars, FieldElem c) : vars_(std::move(vars)) {
  if (!c.is_zero()) {
    demote_if_rational(c);
    terms_.push_back({Monomial(), std::move(c)});
  }
}

MultiPoly::MultiPoly(VarSet vars, std::vector<Term> terms) : vars_(std::move(vars)), terms_(std::move(terms)) {
  normalize_unsorted();
}

void MultiPoly::normalize_unsorted() {
  std::sort(terms_.begin(), terms_.end(), grlex_greater);
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().mono == t.mono) {
      out.back().coeff += t.coeff;
    } else {
      out.push_back(std::move(t));
    }
  }
  terms_.clear();
  for (auto& t : out) {
    if (t.coeff.is_zero()) continue;
    demote_if_rational(t.coeff);
    terms_.push_back(std::move(t));
  }
}

MultiPoly MultiPoly::variable(const VarSet& vars, std::size_t index) {
  if (index >= vars.size()) throw VarSetMismatch("variable index out of range");
  MultiPoly p(vars);
  p.terms_.push_back({Monomial::var(static_cast<Monomial::Var>(index)), FieldElem(1)});
  return p;
}

FieldElem MultiPoly::constant_value() const {
  if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coeff;
  return FieldElem(0);
}

bool MultiPoly::is_one() const { return terms_.size() == 1 && terms_[0].mono.is_one() && terms_[0].coeff.is_one(); }

Monomial::Exp MultiPoly::degree(std::size_t var) const {
  Monomial::Exp d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.degree(static_cast<Monomial::Var>(var)));
  return d;
}

Monomial::Exp MultiPoly::total_degree() const { return terms_.empty() ? 0 : terms_.front().mono.total_degree(); }

std::vector<std::size_t> MultiPoly::support() const {
  std::vector<bool> seen(vars_.size(), false);
  for (const auto& t : terms_) {
    for (const auto& e : t.mono.entries()) seen[e.var] = true;
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (seen[i]) out.push_back(i);
  }
  return out;
}

Monomial MultiPoly::monomial_content() const {
  if (terms_.empty()) return Monomial();
  Monomial g = terms_.front().mono;
  for (const auto& t : terms_) {
    if (g.is_one()) break;
    g = Monomial::gcd(g, t.mono);
  }
  return g;
}

FieldDescriptor MultiPoly::coeff_field() const {
  for (const auto& t : terms_) {
    if (t.coeff.field().count() != 0) return t.coeff.field();
  }
  return FieldDescriptor();
}

void MultiPoly::check_vars(const MultiPoly& o) const {
  if (!(vars_ == o.vars_)) throw VarSetMismatch("polynomials live over different variable sets");
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  check_vars(o);
  if (o.terms_.empty()) return *this;
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    int c = i == terms_.size() ? -1 : j == o.terms_.size() ? 1 : grlex_compare(terms_[i].mono, o.terms_[j].mono);
    if (c > 0) {
      out.push_back(std::move(terms_[i++]));
    } else if (c < 0) {
      out.push_back(o.terms_[j++]);
    } else {
      Term t = std::move(terms_[i++]);
      t.coeff += o.terms_[j++].coeff;
      if (!t.coeff.is_zero()) {
        demote_if_rational(t.coeff);
        out.push_back(std::move(t));
      }
    }
  }
  terms_ = std::move(out);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) { return *this += -o; }

MultiPoly MultiPoly::operator-() const {
  MultiPoly r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  a.check_vars(b);
  if (a.terms_.empty() || b.terms_.empty()) return MultiPoly(a.vars_);
  if (a.terms_.size() < b.terms_.size()) return b * a;
  if (b.terms_.size() == 1) {
    MultiPoly r = a.times_monomial(b.terms_[0].mono);
    if (!b.terms_[0].coeff.is_one()) r = r.scaled(b.terms_[0].coeff);
    return r;
  }
  std::vector<MultiPoly::Term> acc;
  std::unordered_map<Monomial, std::size_t, MonomialHash> index;
  index.reserve(a.terms_.size() * 2);
  for (const auto& tb : b.terms_) {
    for (const auto& ta : a.terms_) {
      Monomial m = ta.mono * tb.mono;
      auto [it, inserted] = index.try_emplace(std::move(m), acc.size());
      if (inserted) {
        acc.push_back({it->first, FieldElem(0)});
      }
      acc[it->second].coeff.add_product(ta.coeff, tb.coeff);
    }
  }
  return MultiPoly(a.vars_, std::move(acc));
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (!(a.terms_[i].mono == b.terms_[i].mono) || !(a.terms_[i].coeff == b.terms_[i].coeff)) return false;
  }
  return true;
}

MultiPoly MultiPoly::scaled(const FieldElem& c) const {
  if (c.is_zero()) return MultiPoly(vars_);
  MultiPoly r = *this;
  for (auto& t : r.terms_) {
    t.coeff *= c;
    demote_if_rational(t.coeff);
  }
  return r;
}

MultiPoly MultiPoly::times_monomial(const Monomial& m) const {
  MultiPoly r = *this;
  if (m.is_one()) return r;
  for (auto& t : r.terms_) t.mono = t.mono * m;
  return r;
}

MultiPoly MultiPoly::divided_by_monomial(const Monomial& m) const {
  MultiPoly r = *this;
  if (m.is_one()) return r;
  for (auto& t : r.terms_) t.mono = m.quotient_of(t.mono);
  return r;
}

MultiPoly MultiPoly::pow(unsigned e) const {
  MultiPoly result(vars_, FieldElem(1));
  MultiPoly base = *this;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

MultiPoly MultiPoly::monic() const {
  if (terms_.empty() || leading_coeff().is_one()) return *this;
  return scaled(leading_coeff().inverse());
}

std::optional<MultiPoly> MultiPoly::divide_exact(const MultiPoly& d) const {
  check_vars(d);
  if (d.is_zero()) throw DivisionByZero("polynomial division by zero");
  if (is_zero()) return MultiPoly(vars_);
  if (d.is_constant()) return scaled(d.constant_value().inverse());
  if (d.total_degree() > total_degree()) return std::nullopt;
  for (const auto& e : d.leading_monomial().entries()) {
    if (degree(e.var) < e.exp) return std::nullopt;
  }
  FieldElem inv_lc = d.leading_coeff().inverse();
  if (d.terms_.size() == 1) {
    MultiPoly q(vars_);
    for (const auto& t : terms_) {
      if (!d.leading_monomial().divides(t.mono)) return std::nullopt;
      q.terms_.push_back({d.leading_monomial().quotient_of(t.mono), t.coeff * inv_lc});
      demote_if_rational(q.terms_.back().coeff);
    }
    return q;
  }
  auto cmp = [](const Monomial& a, const Monomial& b) { return grlex_compare(a, b) > 0; };
  std::map<Monomial, FieldElem, decltype(cmp)> rem(cmp);
  for (const auto& t : terms_) rem.emplace(t.mono, t.coeff);
  MultiPoly q(vars_);
  const Monomial& lm = d.leading_monomial();
  while (!rem.empty()) {
    auto top = rem.begin();
    if (!lm.divides(top->first)) return std::nullopt;
    Monomial qm = lm.quotient_of(top->first);
    FieldElem qc = top->second * inv_lc;
    demote_if_rational(qc);
    rem.erase(top);
    for (std::size_t k = 1; k < d.terms_.size(); ++k) {
      Monomial m = qm * d.terms_[k].mono;
      auto it = rem.find(m);
      FieldElem prod = qc * d.terms_[k].coeff;
      if (it == rem.end()) {
        rem.emplace(std::move(m), -prod);
      } else {
        it->second -= prod;
        if (it->second.is_zero()) rem.erase(it);
      }
    }
    q.terms_.push_back({std::move(qm), std::move(qc)});
  }
  return q;
}

std::vector<MultiPoly> MultiPoly::coefficients_in(std::size_t var) const {
  auto v = static_cast<Monomial::Var>(var);
  std::vector<std::vector<Term>> buckets(degree(var) + 1);
  for (const auto& t : terms_) {
    buckets[t.mono.degree(v)].push_back({t.mono.without(v), t.coeff});
  }
  std::vector<MultiPoly> out;
  out.reserve(buckets.size());
  // Dropping v from terms with equal v-degree preserves their grlex order.
  for (auto& b : buckets) {
    MultiPoly p(vars_);
    p.terms_ = std::move(b);
    out.push_back(std::move(p));
  }
  return out;
}

MultiPoly MultiPoly::from_coefficients(const std::vector<MultiPoly>& coeffs, std::size_t var, const VarSet& vars) {
  std::vector<Term> terms;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    Monomial xk = Monomial::var(static_cast<Monomial::Var>(var), static_cast<Monomial::Exp>(k));
    for (const auto& t : coeffs[k].terms_) terms.push_back({t.mono * xk, t.coeff});
  }
  return MultiPoly(vars, std::move(terms));
}

MultiPoly MultiPoly::derivative(std::size_t var) const {
  auto v = static_cast<Monomial::Var>(var);
  std::vector<Term> terms;
  for (const auto& t : terms_) {
    Monomial::Exp e = t.mono.degree(v);
    if (e == 0) continue;
    Monomial::Entries entries = t.mono.entries();
    for (auto& en : entries) {
      if (en.var == v) en.exp -= 1;
    }
    terms.push_back({Monomial::from_entries(std::move(entries)), t.coeff * FieldElem(static_cast<long>(e))});
  }
  return MultiPoly(vars_, std::move(terms));
}

MultiPoly MultiPoly::galois(const GaloisSigns& s) const {
  if (s.is_identity()) return *this;
  MultiPoly r = *this;
  for (auto& t : r.terms_) t.coeff = t.coeff.galois(s);
  return r;
}

FieldElem MultiPoly::eval(const std::vector<FieldElem>& values) const {
  std::vector<std::vector<FieldElem>> powers(vars_.size());
  auto power = [&](Monomial::Var v, Monomial::Exp e) -> const FieldElem& {
    auto& cache = powers[v];
    if (cache.empty()) {
      if (v >= values.size()) throw VarSetMismatch("no value for variable '" + vars_.name(v) + "'");
      cache.push_back(FieldElem(1));
    }
    while (cache.size() <= e) cache.push_back(cache.back() * values[v]);
    return cache[e];
  };
  FieldElem sum(0);
  FieldElem prod;
  for (const auto& t : terms_) {
    prod = t.coeff;
    for (const auto& e : t.mono.entries()) prod *= power(e.var, e.exp);
    sum += prod;
  }
  return sum;
}

std::uint64_t MultiPoly::eval_mod(const ModularImage& img, const std::vector<std::uint64_t>& values) const {
  std::uint64_t p = img.prime();
  std::uint64_t sum = 0;
  for (const auto& t : terms_) {
    std::uint64_t prod = img.map(t.coeff);
    for (const auto& e : t.mono.entries()) prod = modp::mul(prod, modp::pow(values[e.var], e.exp, p), p);
    sum = (sum + prod) % p;
  }
  return sum;
}

namespace {

std::string render_monomial(const Monomial& m, const VarSet& vars) {
  std::string s;
  for (const auto& e : m.entries()) {
    if (!s.empty()) s += "*";
    s += vars.name(e.var);
    if (e.exp > 1) s += "^" + std::to_string(e.exp);
  }
  return s;
}

// Splits c into a sign and a printable magnitude; multi-part coefficients
// are parenthesized and carry a positive sign.
std::pair<bool, std::string> render_coeff(const FieldElem& c) {
  int nonzero = 0;
  const BigRational* only = nullptr;
  for (const auto& q : c.coords()) {
    if (q != 0) {
      ++nonzero;
      only = &q;
    }
  }
  if (nonzero == 1) {
    bool neg = *only < 0;
    return {neg, (neg ? -c : c).to_string()};
  }
  return {false, "(" + c.to_string() + ")"};
}

}  // namespace

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& t : terms_) {
    auto [neg, mag] = render_coeff(t.coeff);
    std::string mono = render_monomial(t.mono, vars_);
    std::string body;
    if (mono.empty()) {
      body = mag;
    } else if (mag == "1") {
      body = mono;
    } else {
      body = mag + "*" + mono;
    }
    if (out.empty()) {
      out = (neg ? "-" : "") + body;
    } else {
      out += (neg ? " - " : " + ") + body;
    }
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const MultiPoly& p) { return os << p.to_string(); }

}  // namespace ivl
