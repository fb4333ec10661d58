#pragma once

// Random instance generators shared by the unit tests and the acceptance run.

#include <random>

#include "ivl/ratfunc.hpp"

namespace ivl::test {

// Up to `terms` terms of total degree <= `degree` with small integer
// coefficients.
inline MultiPoly random_poly(const VarSet& v, int terms, unsigned degree, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> coeff(-5, 5);
  std::uniform_int_distribution<unsigned> pick(0, degree);
  std::uniform_int_distribution<std::size_t> var(0, v.size() - 1);
  std::vector<MultiPoly::Term> out;
  for (int t = 0; t < terms; ++t) {
    unsigned d = pick(rng);
    Monomial m;
    for (unsigned k = 0; k < d; ++k) m = m * Monomial::var(static_cast<Monomial::Var>(var(rng)));
    out.push_back({m, FieldElem(coeff(rng))});
  }
  return MultiPoly(v, std::move(out));
}

inline RatFunc random_ratfunc(const VarSet& v, unsigned degree, std::mt19937_64& rng) {
  for (;;) {
    MultiPoly den = random_poly(v, 3, degree, rng);
    if (den.is_zero()) continue;
    return RatFunc(random_poly(v, 4, degree, rng), den);
  }
}

struct ChainRuleOutcome {
  bool holds = false;
  std::size_t var = 0;
};

// Checks d/dv substitute(f, m) = sum_w substitute(df/dw, m) * d m(w)/dv for
// every v, on one random instance over `v` (f of degree <= 4, images of
// degree <= 2). Instances whose composed denominator vanishes are redrawn.
inline ChainRuleOutcome chain_rule_instance(const VarSet& v, std::mt19937_64& rng) {
  for (;;) {
    RatFunc f = random_ratfunc(v, 4, rng);
    Substitution m(v.size());
    for (std::size_t w = 0; w < v.size(); ++w) m[w] = random_ratfunc(v, 2, rng);
    RatFunc lhs_base;
    try {
      lhs_base = substitute(f, m);
    } catch (const DenominatorVanishes&) {
      continue;
    }
    for (std::size_t x = 0; x < v.size(); ++x) {
      RatFunc lhs = differentiate(lhs_base, x);
      RatFunc rhs(v);
      for (std::size_t w = 0; w < v.size(); ++w)
        rhs += substitute(differentiate(f, w), m) * differentiate(*m[w], x);
      if (!eq_exact(lhs, rhs)) return {false, x};
    }
    return {true, 0};
  }
}

}  // namespace ivl::test
