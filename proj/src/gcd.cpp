#include <algorithm>
#include <map>
#include <mutex>
#include <random>

#include "ivl/poly.hpp"

namespace ivl {

namespace {

constexpr std::uint64_t kPrimeCeiling = std::uint64_t{1} << 61;

const ModularImage& modular_image(const FieldDescriptor& f) {
  static std::mutex mu;
  static std::map<std::string, ModularImage> cache;
  std::lock_guard lock(mu);
  auto key = f.to_string();
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, ModularImage::for_field(f, kPrimeCeiling)).first;
  return it->second;
}

using UPoly = std::vector<std::uint64_t>;

void trim(UPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::size_t upoly_gcd_degree(UPoly a, UPoly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    // a <- a mod b
    std::uint64_t inv = modp::inv(b.back(), p);
    while (a.size() >= b.size()) {
      std::uint64_t f = modp::mul(a.back(), inv, p);
      std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) {
        std::uint64_t t = modp::mul(f, b[i], p);
        a[shift + i] = (a[shift + i] + p - t) % p;
      }
      trim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return a.empty() ? 0 : a.size() - 1;
}

// Term data mapped into F_p once per gcd call.
struct ModularTerms {
  std::vector<std::uint64_t> coeffs;
  const MultiPoly* poly;
};

std::optional<ModularTerms> map_terms(const MultiPoly& p, const ModularImage& img) {
  ModularTerms m{{}, &p};
  m.coeffs.reserve(p.size());
  try {
    for (const auto& t : p.terms()) m.coeffs.push_back(img.map(t.coeff));
  } catch (const DivisionByZero&) {
    return std::nullopt;
  }
  return m;
}

// Univariate image in `var` at the given point for the other variables.
UPoly univariate_image(const ModularTerms& mt, std::size_t var, const std::vector<std::uint64_t>& point,
                       std::uint64_t p) {
  UPoly out(mt.poly->degree(var) + 1, 0);
  const auto& terms = mt.poly->terms();
  for (std::size_t k = 0; k < terms.size(); ++k) {
    std::uint64_t v = mt.coeffs[k];
    std::size_t deg = 0;
    for (const auto& e : terms[k].mono.entries()) {
      if (e.var == var) {
        deg = e.exp;
      } else {
        v = modp::mul(v, modp::pow(point[e.var], e.exp, p), p);
      }
    }
    out[deg] = (out[deg] + v) % p;
  }
  return out;
}

// Upper bounds on the degree of gcd(a, b) in each variable, from univariate
// images at random points. An image whose leading coefficient vanishes is
// discarded, so every bound returned is valid.
std::vector<std::size_t> degree_bounds(const MultiPoly& a, const MultiPoly& b, const std::vector<std::size_t>& vars) {
  std::vector<std::size_t> bounds;
  bounds.reserve(vars.size());
  for (auto v : vars) bounds.push_back(std::min(a.degree(v), b.degree(v)));

  FieldDescriptor f = a.coeff_field();
  if (f.count() == 0) f = b.coeff_field();
  const ModularImage& img = modular_image(f);
  auto ma = map_terms(a, img);
  auto mb = map_terms(b, img);
  if (!ma || !mb) return bounds;

  std::uint64_t p = img.prime();
  std::mt19937_64 rng(a.size() * 1315423911u + b.size() + a.total_degree());
  std::uniform_int_distribution<std::uint64_t> dist(1, p - 1);
  std::vector<std::uint64_t> point(a.vars().size());
  constexpr int kPasses = 2;
  for (int pass = 0; pass < kPasses; ++pass) {
    for (auto& x : point) x = dist(rng);
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if (bounds[i] == 0) continue;
      std::size_t v = vars[i];
      UPoly ia = univariate_image(*ma, v, point, p);
      UPoly ib = univariate_image(*mb, v, point, p);
      if (ia.back() == 0 || ib.back() == 0) continue;
      bounds[i] = std::min(bounds[i], upoly_gcd_degree(std::move(ia), std::move(ib), p));
    }
  }
  return bounds;
}

MultiPoly one_like(const MultiPoly& p) { return MultiPoly(p.vars(), FieldElem(1)); }

MultiPoly gcd_core(const MultiPoly& a, const MultiPoly& b);

MultiPoly gcd_list(std::vector<MultiPoly> polys) {
  std::sort(polys.begin(), polys.end(), [](const MultiPoly& x, const MultiPoly& y) { return x.size() < y.size(); });
  MultiPoly g(polys.front().vars());
  for (const auto& p : polys) {
    if (p.is_zero()) continue;
    g = multivariate_gcd(g, p);
    if (g.is_constant()) break;
  }
  return g;
}

MultiPoly content_in(const MultiPoly& p, std::size_t var) {
  auto coeffs = p.coefficients_in(var);
  for (const auto& c : coeffs) {
    if (!c.is_zero() && c.is_constant()) return one_like(p);
  }
  return gcd_list(std::move(coeffs));
}

MultiPoly exact(const MultiPoly& a, const MultiPoly& b) {
  auto q = a.divide_exact(b);
  if (!q) throw Error("internal: expected exact polynomial division");
  return *q;
}

using RPoly = std::vector<MultiPoly>;  // coefficients in the main variable

void trim(RPoly& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}

RPoly pseudo_remainder(RPoly r, const RPoly& b) {
  const MultiPoly& lcb = b.back();
  std::size_t n = b.size() - 1;
  long e = static_cast<long>(r.size()) - static_cast<long>(b.size()) + 1;
  while (!r.empty() && r.size() - 1 >= n) {
    MultiPoly lcr = r.back();
    std::size_t shift = r.size() - 1 - n;
    for (auto& c : r) c = c * lcb;
    for (std::size_t i = 0; i < b.size(); ++i) r[shift + i] -= lcr * b[i];
    trim(r);
    --e;
  }
  if (e > 0) {
    MultiPoly f = lcb.pow(static_cast<unsigned>(e));
    for (auto& c : r) c = c * f;
  }
  return r;
}

// Last nonzero subresultant of a and b in the main variable; equals their
// gcd up to a factor free of that variable.
RPoly subresultant_last(RPoly a, RPoly b) {
  if (a.size() < b.size()) std::swap(a, b);
  const VarSet& vars = a.back().vars();
  MultiPoly g(vars, FieldElem(1)), h(vars, FieldElem(1));
  for (;;) {
    std::size_t delta = a.size() - b.size();
    RPoly r = pseudo_remainder(a, b);
    if (r.empty()) return b;
    if (r.size() == 1) return r;
    MultiPoly div = g * h.pow(static_cast<unsigned>(delta));
    for (auto& c : r) c = exact(c, div);
    a = std::move(b);
    b = std::move(r);
    g = a.back();
    if (delta == 1) {
      h = g;
    } else if (delta > 1) {
      h = exact(g.pow(static_cast<unsigned>(delta)), h.pow(static_cast<unsigned>(delta - 1)));
    }
  }
}

MultiPoly univariate_gcd(MultiPoly a, MultiPoly b, std::size_t var) {
  RPoly ra = a.coefficients_in(var), rb = b.coefficients_in(var);
  if (ra.size() < rb.size()) std::swap(ra, rb);
  while (!rb.empty()) {
    FieldElem inv = rb.back().constant_value().inverse();
    while (ra.size() >= rb.size()) {
      FieldElem f = ra.back().constant_value() * inv;
      std::size_t shift = ra.size() - rb.size();
      for (std::size_t i = 0; i < rb.size(); ++i) ra[shift + i] -= rb[i].scaled(f);
      trim(ra);
      if (ra.empty()) break;
    }
    std::swap(ra, rb);
  }
  return MultiPoly::from_coefficients(ra, var, a.vars()).monic();
}

// Both inputs nonzero, nonconstant and free of monomial content.
MultiPoly gcd_core(const MultiPoly& a, const MultiPoly& b) {
  if (a.size() == b.size() && a.monic() == b.monic()) return a.monic();
  auto sa = a.support(), sb = b.support();
  std::vector<std::size_t> all;
  std::set_union(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(all));
  std::vector<std::size_t> shared;
  std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(shared));
  if (shared.empty()) return one_like(a);

  auto bounds = degree_bounds(a, b, shared);
  if (std::all_of(bounds.begin(), bounds.end(), [](std::size_t d) { return d == 0; })) return one_like(a);

  auto matches_all = [&](const MultiPoly& p) {
    if (p.support().size() != shared.size()) return false;
    for (std::size_t i = 0; i < shared.size(); ++i) {
      if (bounds[i] != p.degree(shared[i])) return false;
    }
    return true;
  };
  const MultiPoly& small = a.size() <= b.size() ? a : b;
  const MultiPoly& large = a.size() <= b.size() ? b : a;
  if (matches_all(small) && large.divide_exact(small)) return small.monic();
  if (matches_all(large) && small.divide_exact(large)) return large.monic();

  // A variable the gcd cannot involve: reduce to the gcd of the coefficients.
  for (auto v : all) {
    auto it = std::find(shared.begin(), shared.end(), v);
    bool free = it == shared.end() || bounds[static_cast<std::size_t>(it - shared.begin())] == 0;
    if (!free) continue;
    std::vector<MultiPoly> parts = a.coefficients_in(v);
    for (auto& c : b.coefficients_in(v)) parts.push_back(std::move(c));
    return gcd_list(std::move(parts)).monic();
  }

  // Every variable may occur in the gcd. Pick the one of least degree.
  std::size_t x = all.front();
  for (auto v : all) {
    if (std::min(a.degree(v), b.degree(v)) < std::min(a.degree(x), b.degree(x))) x = v;
  }
  if (all.size() == 1) return univariate_gcd(a, b, x);

  MultiPoly ca = content_in(a, x), cb = content_in(b, x);
  MultiPoly gc = multivariate_gcd(ca, cb);
  MultiPoly pa = exact(a, ca), pb = exact(b, cb);
  RPoly last = subresultant_last(pa.coefficients_in(x), pb.coefficients_in(x));
  if (last.size() <= 1) return gc.monic();
  MultiPoly h = MultiPoly::from_coefficients(last, x, a.vars());
  h = exact(h, content_in(h, x));
  return (gc * h).monic();
}

}  // namespace

MultiPoly multivariate_gcd(const MultiPoly& p, const MultiPoly& q) {
  if (!(p.vars() == q.vars())) throw VarSetMismatch("gcd of polynomials over different variable sets");
  if (p.is_zero()) return q.monic();
  if (q.is_zero()) return p.monic();
  if (p.is_constant() || q.is_constant()) return one_like(p);
  Monomial mp = p.monomial_content(), mq = q.monomial_content();
  Monomial common = Monomial::gcd(mp, mq);
  MultiPoly a = p.divided_by_monomial(mp), b = q.divided_by_monomial(mq);
  MultiPoly core = (a.is_constant() || b.is_constant()) ? one_like(p) : gcd_core(a, b);
  return core.times_monomial(common);
}

}  // namespace ivl
