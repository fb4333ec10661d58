#include <sstream>

#include "ivl/dsl.hpp"

namespace ivl::dsl {

namespace {

int precedence(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub: return 1;
    case Expr::Kind::Mul:
    case Expr::Kind::Div: return 2;
    case Expr::Kind::Neg: return 3;
    case Expr::Kind::Pow: return 4;
    default: return 5;
  }
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out + "\"";
}

std::string wrap_if(bool cond, const std::string& s) { return cond ? "(" + s + ")" : s; }

std::string join_names(const std::vector<std::string>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + v[i];
  return out;
}

std::string render_binding(const Binding& b) { return b.first + " -> " + render(*b.second); }

std::string join_bindings(const std::vector<Binding>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + render_binding(v[i]);
  return out;
}

std::string join_exprs(const std::vector<ExprPtr>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + render(*v[i]);
  return out;
}

std::string join_mats(const std::vector<MatExprPtr>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + render(*v[i]);
  return out;
}

std::string render_auto(const AutoExpr& a) {
  std::string out;
  switch (a.kind) {
    case AutoExpr::Kind::Linear:
      out = "linear(" + render(*a.matrix);
      if (!a.vars.empty()) out += "; " + join_names(a.vars);
      return out + ")";
    case AutoExpr::Kind::Monomial: {
      out = "monomial([";
      for (std::size_t i = 0; i < a.exps.size(); ++i) {
        out += i ? ", [" : "[";
        for (std::size_t j = 0; j < a.exps[i].size(); ++j) out += (j ? ", " : "") + std::to_string(a.exps[i][j]);
        out += "]";
      }
      out += "]; " + join_exprs(a.coeffs);
      if (!a.vars.empty()) out += "; " + join_names(a.vars);
      return out + ")";
    }
    case AutoExpr::Kind::Galois: {
      out = "galois(";
      for (std::size_t i = 0; i < a.signs.size(); ++i)
        out += (i ? ", " : "") + std::string("sqrt(") + std::to_string(a.signs[i].first) + ") -> " +
               std::to_string(a.signs[i].second);
      out += ")";
      if (!a.maps.empty()) out += " with " + join_bindings(a.maps);
      return out;
    }
  }
  return out;
}

std::string render_claim(const ClaimExpr& c) {
  using K = ClaimExpr::Kind;
  std::string n = std::to_string(c.expected);
  switch (c.kind) {
    case K::Identity: return "identity(" + join_exprs(c.exprs) + ")";
    case K::Invariant: return "invariant(" + c.names[0] + ", " + render(*c.exprs[0]) + ")";
    case K::GroupOrder: return "order(group(" + join_mats(c.mats) + ")) == " + n;
    case K::CatalogOrder: return "order(catalog(" + quote(c.names[0]) + ")) == " + n;
    case K::ElementOrder: return "order(" + c.names[0] + ") == " + n;
    case K::Rank: return "rank(" + join_exprs(c.exprs) + ") == " + n;
    case K::MatrixEq: return "matrix_eq(" + join_mats(c.mats) + ")";
    case K::Commutes: return "commutes(" + join_mats(c.mats) + ")";
    case K::Acts: return "acts(" + c.names[0] + ", " + join_bindings(c.maps) + ")";
    case K::Lift: return "acts(" + c.names[0] + ", " + c.names[1] + ")";
    case K::Representation: return "representation(" + join_mats(c.mats) + ")";
  }
  return "";
}

struct StmtRenderer {
  std::string operator()(const FieldDecl& f) const {
    std::string out = "field Q";
    for (std::size_t i = 0; i < f.radicands.size(); ++i)
      out += (i ? ", sqrt(" : " adjoin sqrt(") + std::to_string(f.radicands[i]) + ")";
    return out + ";";
  }
  std::string operator()(const VarsDecl& v) const {
    std::string out = "vars";
    for (const auto& n : v.names) out += " " + n;
    return out + ";";
  }
  std::string operator()(const MatrixDecl& m) const { return "matrix " + m.name + " = " + render(*m.value) + ";"; }
  std::string operator()(const AutoDecl& a) const { return "auto " + a.name + " = " + render_auto(a.value) + ";"; }
  std::string operator()(const LetDecl& l) const { return "let " + l.name + " = " + render(*l.value) + ";"; }
  std::string operator()(const ChartDecl& c) const {
    std::string out = "chart ";
    for (std::size_t i = 0; i < c.defs.size(); ++i)
      out += (i ? ", " : "") + c.defs[i].first + " = " + render(*c.defs[i].second);
    return out + ";";
  }
  std::string operator()(const AssertStmt& a) const {
    std::string out = "assert ";
    if (a.id) out += quote(*a.id) + " ";
    out += render_claim(a.claim);
    if (a.ref) out += " ref " + quote(*a.ref);
    return out + ";";
  }
};

}  // namespace

std::string render(const Expr& e) {
  using K = Expr::Kind;
  switch (e.kind) {
    case K::Int: return e.value.get_str();
    case K::Name: return e.name;
    case K::Neg: {
      const Expr& a = *e.args[0];
      return "-" + wrap_if(precedence(a) < 3, render(a));
    }
    case K::Add:
    case K::Sub:
    case K::Mul:
    case K::Div: {
      int p = precedence(e);
      const char* op = e.kind == K::Add ? " + " : e.kind == K::Sub ? " - " : e.kind == K::Mul ? "*" : "/";
      const Expr& a = *e.args[0];
      const Expr& b = *e.args[1];
      // A right operand at the same level keeps its parentheses so the tree
      // shape survives a round trip.
      return wrap_if(precedence(a) < p, render(a)) + op + wrap_if(precedence(b) <= p, render(b));
    }
    case K::Pow: {
      const Expr& a = *e.args[0];
      return wrap_if(precedence(a) < 5, render(a)) + "^" + std::to_string(e.exponent);
    }
    case K::Sqrt: return "sqrt(" + e.value.get_str() + ")";
    case K::Apply: return "apply(" + e.name + ", " + render(*e.args[0]) + ")";
    case K::Subst: return "subst(" + render(*e.args[0]) + ", " + join_bindings(e.binds) + ")";
    case K::Expand: return "expand(" + render(*e.args[0]) + ")";
  }
  return "";
}

std::string render(const MatExpr& m) {
  using K = MatExpr::Kind;
  switch (m.kind) {
    case K::Literal: {
      std::string out = "[";
      for (std::size_t i = 0; i < m.rows.size(); ++i) {
        out += i ? ", [" : "[";
        for (std::size_t j = 0; j < m.rows[i].size(); ++j) out += (j ? ", " : "") + ivl::to_string(m.rows[i][j]);
        out += "]";
      }
      return out + "]";
    }
    case K::Name: return m.name;
    case K::Mul: {
      const MatExpr& a = *m.args[0];
      const MatExpr& b = *m.args[1];
      return render(a) + "*" + wrap_if(b.kind == K::Mul, render(b));
    }
    case K::Neg: return "-" + wrap_if(m.args[0]->kind == K::Mul, render(*m.args[0]));
    case K::Conj: return "conj(" + render(*m.args[0]) + ", " + render(*m.args[1]) + ")";
    case K::Inv: return "inv(" + render(*m.args[0]) + ")";
    case K::Transpose: return "transpose(" + render(*m.args[0]) + ")";
    case K::Catalog: return "catalog(" + quote(m.name) + ")";
  }
  return "";
}

std::string render(const Stmt& s) { return std::visit(StmtRenderer{}, s.node); }

std::string render(const Script& s) {
  std::string out;
  for (const auto& st : s.stmts) out += render(st) + "\n";
  return out;
}

// ---- structural equality

namespace {

bool same_ptrs(const std::vector<ExprPtr>& a, const std::vector<ExprPtr>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!same(*a[i], *b[i])) return false;
  return true;
}

bool same_ptrs(const std::vector<MatExprPtr>& a, const std::vector<MatExprPtr>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!same(*a[i], *b[i])) return false;
  return true;
}

bool same_binds(const std::vector<Binding>& a, const std::vector<Binding>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].first != b[i].first || !same(*a[i].second, *b[i].second)) return false;
  return true;
}

struct SameStmt {
  bool operator()(const FieldDecl& a, const FieldDecl& b) const { return a.radicands == b.radicands; }
  bool operator()(const VarsDecl& a, const VarsDecl& b) const { return a.names == b.names; }
  bool operator()(const MatrixDecl& a, const MatrixDecl& b) const {
    return a.name == b.name && same(*a.value, *b.value);
  }
  bool operator()(const AutoDecl& a, const AutoDecl& b) const {
    const AutoExpr& x = a.value;
    const AutoExpr& y = b.value;
    if (a.name != b.name || x.kind != y.kind || x.vars != y.vars || x.exps != y.exps || x.signs != y.signs)
      return false;
    if ((x.matrix == nullptr) != (y.matrix == nullptr)) return false;
    if (x.matrix && !same(*x.matrix, *y.matrix)) return false;
    return same_ptrs(x.coeffs, y.coeffs) && same_binds(x.maps, y.maps);
  }
  bool operator()(const LetDecl& a, const LetDecl& b) const { return a.name == b.name && same(*a.value, *b.value); }
  bool operator()(const ChartDecl& a, const ChartDecl& b) const { return same_binds(a.defs, b.defs); }
  bool operator()(const AssertStmt& a, const AssertStmt& b) const {
    const ClaimExpr& x = a.claim;
    const ClaimExpr& y = b.claim;
    return a.id == b.id && a.ref == b.ref && x.kind == y.kind && x.expected == y.expected && x.names == y.names &&
           same_ptrs(x.exprs, y.exprs) && same_ptrs(x.mats, y.mats) && same_binds(x.maps, y.maps);
  }
  template <class A, class B>
  bool operator()(const A&, const B&) const {
    return false;
  }
};

}  // namespace

bool same(const Expr& a, const Expr& b) {
  return a.kind == b.kind && a.value == b.value && a.name == b.name && a.exponent == b.exponent &&
         same_ptrs(a.args, b.args) && same_binds(a.binds, b.binds);
}

bool same(const MatExpr& a, const MatExpr& b) {
  return a.kind == b.kind && a.rows == b.rows && a.name == b.name && same_ptrs(a.args, b.args);
}

bool same(const Script& a, const Script& b) {
  if (a.stmts.size() != b.stmts.size()) return false;
  for (std::size_t i = 0; i < a.stmts.size(); ++i)
    if (!std::visit(SameStmt{}, a.stmts[i].node, b.stmts[i].node)) return false;
  return true;
}

void collect_names(const Expr& e, std::vector<std::string>& out) {
  if (e.kind == Expr::Kind::Name) out.push_back(e.name);
  for (const auto& a : e.args) collect_names(*a, out);
  for (const auto& [v, x] : e.binds) {
    out.push_back(v);
    collect_names(*x, out);
  }
}

}  // namespace ivl::dsl
