// Name resolution and claim construction for `.ivl` scripts.
//
// Charts stack variables in levels: a charted variable sits one level above
// the highest variable in its definition. Variables that take part in no
// chart are parameters and are never expanded. Applying an automorphism
// first rewrites the argument down to the level of the automorphism's
// domain; identities are compared at the lowest level present on either
// side.

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <sstream>

#include "ivl/errors.hpp"
#include "ivl/field_action.hpp"
#include "ivl/ledger.hpp"
#include "ivl/matgroup.hpp"

namespace ivl {

using namespace dsl;

class ScriptContext;

namespace {

struct LetSlot {
  ExprPtr expr;
  std::once_flag once;
  std::optional<RatFunc> value;
  std::exception_ptr error;
};

struct AutoInfo {
  FieldAutomorphism a;
  int level = 0;
};

}  // namespace

class ScriptContext {
 public:
  FieldDescriptor field;
  VarSet vars;
  std::vector<std::size_t> first_vars;  // declaration order
  std::map<std::string, RatMatrix> matrices;
  std::map<std::string, AutoInfo> autos;
  std::map<std::string, std::shared_ptr<LetSlot>> lets;
  std::vector<int> level;
  std::vector<bool> connected;
  std::vector<std::optional<RatFunc>> chart;

  RatFunc constant(const BigRational& q) const { return RatFunc(vars, FieldElem(q)); }

  RatFunc eval(const Expr& e) const {
    using K = Expr::Kind;
    switch (e.kind) {
      case K::Int: return constant(BigRational(e.value));
      case K::Name: return lookup(e.name);
      case K::Neg: return -eval(*e.args[0]);
      case K::Add: return eval(*e.args[0]) + eval(*e.args[1]);
      case K::Sub: return eval(*e.args[0]) - eval(*e.args[1]);
      case K::Mul: return eval(*e.args[0]) * eval(*e.args[1]);
      case K::Div: return eval(*e.args[0]) / eval(*e.args[1]);
      case K::Pow: return eval(*e.args[0]).pow(e.exponent);
      case K::Sqrt: return RatFunc(vars, sqrt_symbol(e.value.get_si(), field));
      case K::Apply: {
        auto it = autos.find(e.name);
        if (it == autos.end()) throw Error("unknown automorphism '" + e.name + "'");
        return apply_auto(it->second, e.name, eval(*e.args[0]));
      }
      case K::Subst: {
        Substitution m(vars.size());
        for (const auto& [v, x] : e.binds) m[vars.require(v)] = eval(*x);
        return substitute(eval(*e.args[0]), m);
      }
      case K::Expand: return expand_once(eval(*e.args[0]));
    }
    throw Error("unhandled expression");
  }

  RatFunc lookup(const std::string& name) const {
    if (auto it = lets.find(name); it != lets.end()) {
      LetSlot& s = *it->second;
      std::call_once(s.once, [&] {
        try {
          s.value = eval(*s.expr);
        } catch (...) {
          s.error = std::current_exception();
        }
      });
      if (s.error) std::rethrow_exception(s.error);
      return *s.value;
    }
    return RatFunc::variable(vars, vars.require(name));
  }

  RatMatrix eval(const MatExpr& m) const {
    using K = MatExpr::Kind;
    switch (m.kind) {
      case K::Literal: return RatMatrix::from_rows(m.rows);
      case K::Name: return matrices.at(m.name);
      case K::Mul: return eval(*m.args[0]) * eval(*m.args[1]);
      case K::Neg: return -eval(*m.args[0]);
      case K::Conj: return conjugate(eval(*m.args[0]), eval(*m.args[1]));
      case K::Inv: return eval(*m.args[0]).inverse();
      case K::Transpose: return eval(*m.args[0]).transpose();
      case K::Catalog: return catalog::matrix(m.name);
    }
    throw Error("unhandled matrix expression");
  }

  std::vector<RatMatrix> eval(const std::vector<MatExprPtr>& ms) const {
    std::vector<RatMatrix> out;
    for (const auto& m : ms) out.push_back(eval(*m));
    return out;
  }

  // Rewrites charted variables above `target` in terms of variables at or
  // below it.
  RatFunc expand_to(const RatFunc& f, int target) const {
    Substitution m(vars.size());
    bool any = false;
    for (auto v : f.support()) {
      if (chart[v] && level[v] > target) {
        m[v] = def_at(v, target);
        any = true;
      }
    }
    return any ? substitute(f, m) : f;
  }

  RatFunc expand_once(const RatFunc& f) const {
    Substitution m(vars.size());
    bool any = false;
    for (auto v : f.support()) {
      if (chart[v]) {
        m[v] = *chart[v];
        any = true;
      }
    }
    return any ? substitute(f, m) : f;
  }

  std::optional<int> lowest_level(const std::vector<const RatFunc*>& fs) const {
    std::optional<int> low;
    for (const RatFunc* f : fs) {
      for (auto v : f->support()) {
        if (connected[v] && (!low || level[v] < *low)) low = level[v];
      }
    }
    return low;
  }

  std::pair<RatFunc, RatFunc> align(const RatFunc& a, const RatFunc& b) const {
    auto low = lowest_level({&a, &b});
    if (!low) return {a, b};
    return {expand_to(a, *low), expand_to(b, *low)};
  }

  RatFunc apply_auto(const AutoInfo& info, const std::string& name, const RatFunc& f) const {
    for (auto v : f.support()) {
      if (connected[v] && level[v] < info.level)
        throw Error("'" + vars.name(v) + "' lies below the variables moved by " + name);
    }
    return apply(info.a, expand_to(f, info.level));
  }

 private:
  RatFunc def_at(std::size_t v, int target) const {
    {
      std::lock_guard<std::mutex> lock(memo_mutex_);
      if (auto it = memo_.find({v, target}); it != memo_.end()) return it->second;
    }
    RatFunc r = expand_to(*chart[v], target);
    std::lock_guard<std::mutex> lock(memo_mutex_);
    memo_.emplace(std::make_pair(v, target), r);
    return r;
  }

  mutable std::mutex memo_mutex_;
  mutable std::map<std::pair<std::size_t, int>, RatFunc> memo_;
};

namespace {

using Context = ScriptContext;

ClaimKind kind_of(ClaimExpr::Kind k) {
  using K = ClaimExpr::Kind;
  switch (k) {
    case K::Identity: return ClaimKind::Identity;
    case K::Invariant: return ClaimKind::Invariance;
    case K::GroupOrder:
    case K::CatalogOrder:
    case K::ElementOrder: return ClaimKind::GroupOrder;
    case K::Rank: return ClaimKind::Rank;
    case K::MatrixEq:
    case K::Commutes: return ClaimKind::MatrixEq;
    case K::Acts:
    case K::Lift:
    case K::Representation: return ClaimKind::ActionMatches;
  }
  return ClaimKind::Identity;
}

enum class NameKind { Var, Let, Matrix, Auto };

class Compiler {
 public:
  explicit Compiler(std::vector<Diagnostic>& diags) : diags_(diags), ctx_(std::make_shared<Context>()) {}

  std::shared_ptr<const Context> context() const { return ctx_; }

  std::vector<Claim> run(const Script& s) {
    prepass(s);
    for (const auto& st : s.stmts) {
      try {
        std::visit([&](const auto& node) { this->statement(st.span, node); }, st.node);
      } catch (const Error& e) {
        error(st.span, e.what());
      }
    }
    return std::move(claims_);
  }

  // ---- statements

  void statement(Span, const FieldDecl&) {}
  void statement(Span, const VarsDecl&) {}

  void statement(Span sp, const MatrixDecl& d) {
    if (!check_mat(*d.value) || !bind(sp, d.name, NameKind::Matrix)) return;
    ctx_->matrices[d.name] = ctx_->eval(*d.value);
  }

  void statement(Span sp, const LetDecl& d) {
    if (!check_expr(*d.value) || !bind(sp, d.name, NameKind::Let)) return;
    auto slot = std::make_shared<LetSlot>();
    slot->expr = d.value;
    ctx_->lets[d.name] = slot;
  }

  void statement(Span sp, const AutoDecl& d) {
    std::optional<AutoInfo> info = build_auto(sp, d.value);
    if (!info || !bind(sp, d.name, NameKind::Auto)) return;
    ctx_->autos[d.name] = std::move(*info);
  }

  void statement(Span sp, const ChartDecl& d) {
    Context& c = *ctx_;
    std::vector<std::pair<std::size_t, RatFunc>> defs;
    for (const auto& [name, e] : d.defs) {
      auto v = var_index(sp, name);
      if (!v || !check_expr(*e)) return;
      if (c.chart[*v] || std::any_of(defs.begin(), defs.end(), [&](const auto& p) { return p.first == *v; })) {
        error(sp, "'" + name + "' already has a chart definition");
        return;
      }
      if (used_below_.count(*v)) {
        error(sp, "'" + name + "' already appears inside an earlier chart definition");
        return;
      }
      defs.emplace_back(*v, c.eval(*e));
    }
    for (auto& [v, f] : defs) {
      int top = -1;
      for (auto w : f.support()) {
        if (w == v) {
          error(sp, "chart definition of '" + c.vars.name(v) + "' refers to itself");
          return;
        }
        top = std::max(top, c.level[w]);
      }
      c.level[v] = top + 1;
      c.connected[v] = true;
      for (auto w : f.support()) {
        c.connected[w] = true;
        used_below_.insert(w);
      }
      c.chart[v] = std::move(f);
    }
  }

  void statement(Span sp, const AssertStmt& a) {
    if (!check_claim(a.claim)) return;
    Claim cl;
    cl.id = a.id ? *a.id : "line-" + std::to_string(sp.line) + "." + std::to_string(sp.col);
    if (!ids_.insert(cl.id).second) {
      error(sp, "duplicate claim id '" + cl.id + "'");
      return;
    }
    cl.kind = kind_of(a.claim.kind);
    cl.expected = expected_text(a.claim);
    cl.paper_ref = a.ref ? *a.ref : cl.expected;
    package(cl, a.claim);
    claims_.push_back(std::move(cl));
  }

 private:
  // ---- declarations

  void prepass(const Script& s) {
    bool have_field = false;
    std::vector<std::string> names;
    std::set<std::string> seen;
    for (const auto& st : s.stmts) {
      if (const auto* f = std::get_if<FieldDecl>(&st.node)) {
        if (have_field) {
          error(st.span, "a script has a single field declaration");
          continue;
        }
        have_field = true;
        try {
          ctx_->field = FieldDescriptor(std::span<const long>(f->radicands));
        } catch (const Error& e) {
          error(st.span, e.what());
        }
      } else if (const auto* v = std::get_if<VarsDecl>(&st.node)) {
        for (const auto& n : v->names) {
          if (!seen.insert(n).second) {
            error(st.span, "variable '" + n + "' declared twice");
            continue;
          }
          names.push_back(n);
          kinds_[n] = NameKind::Var;
        }
      }
    }
    Context& c = *ctx_;
    c.vars = VarSet(names);
    for (std::size_t i = 0; i < names.size(); ++i) c.first_vars.push_back(i);
    c.level.assign(names.size(), 0);
    c.connected.assign(names.size(), false);
    c.chart.assign(names.size(), std::nullopt);
  }

  bool bind(Span sp, const std::string& name, NameKind k) {
    if (kinds_.count(name)) {
      error(sp, "'" + name + "' is already bound");
      return false;
    }
    kinds_[name] = k;
    return true;
  }

  std::optional<std::size_t> var_index(Span sp, const std::string& name) {
    auto it = kinds_.find(name);
    if (it == kinds_.end() || it->second != NameKind::Var) {
      error(sp, it == kinds_.end() ? "unknown variable '" + name + "'" : "'" + name + "' is not a variable");
      return std::nullopt;
    }
    return ctx_->vars.require(name);
  }

  std::vector<std::size_t> acted_vars(Span sp, const std::vector<std::string>& explicit_vars, std::size_t n,
                                      bool& ok) {
    std::vector<std::size_t> out;
    if (explicit_vars.empty()) {
      if (ctx_->first_vars.size() < n) {
        error(sp, "not enough declared variables for a " + std::to_string(n) + "x" + std::to_string(n) + " action");
        ok = false;
        return out;
      }
      out.assign(ctx_->first_vars.begin(), ctx_->first_vars.begin() + static_cast<long>(n));
      return out;
    }
    if (explicit_vars.size() != n) {
      error(sp, "expected " + std::to_string(n) + " variables, got " + std::to_string(explicit_vars.size()));
      ok = false;
      return out;
    }
    for (const auto& v : explicit_vars) {
      auto i = var_index(sp, v);
      if (!i) {
        ok = false;
        return out;
      }
      out.push_back(*i);
    }
    return out;
  }

  std::optional<AutoInfo> build_auto(Span sp, const AutoExpr& a) {
    Context& c = *ctx_;
    FieldAutomorphism fa;
    bool ok = true;
    switch (a.kind) {
      case AutoExpr::Kind::Linear: {
        if (!check_mat(*a.matrix)) return std::nullopt;
        RatMatrix m = c.eval(*a.matrix);
        auto vs = acted_vars(sp, a.vars, m.dim(), ok);
        if (!ok) return std::nullopt;
        fa = from_matrix(m, c.vars, vs);
        break;
      }
      case AutoExpr::Kind::Monomial: {
        std::size_t n = a.exps.size();
        for (const auto& row : a.exps) {
          if (row.size() != n) {
            error(sp, "exponent matrix is not square");
            return std::nullopt;
          }
        }
        if (a.coeffs.size() != n) {
          error(sp, "expected " + std::to_string(n) + " coefficients, got " + std::to_string(a.coeffs.size()));
          return std::nullopt;
        }
        std::vector<RatFunc> coeffs;
        for (const auto& e : a.coeffs) {
          if (!check_expr(*e)) return std::nullopt;
          coeffs.push_back(c.eval(*e));
        }
        auto vs = acted_vars(sp, a.vars, n, ok);
        if (!ok) return std::nullopt;
        fa = monomial_automorphism(a.exps, coeffs, c.vars, vs);
        break;
      }
      case AutoExpr::Kind::Galois: {
        GaloisSigns signs;
        auto rads = c.field.radicands();
        for (const auto& [d, s] : a.signs) {
          if (std::find(rads.begin(), rads.end(), d) == rads.end()) {
            error(sp, "sqrt(" + std::to_string(d) + ") is not a generator of the declared field");
            return std::nullopt;
          }
          signs.set(d, s);
        }
        Substitution m(c.vars.size());
        for (const auto& [v, e] : a.maps) {
          auto i = var_index(sp, v);
          if (!i || !check_expr(*e)) return std::nullopt;
          if (m[*i]) {
            error(sp, "'" + v + "' is mapped twice");
            return std::nullopt;
          }
          m[*i] = c.eval(*e);
        }
        fa = FieldAutomorphism(c.vars, signs, std::move(m));
        break;
      }
    }
    AutoInfo info{fa, 0};
    auto dom = fa.domain();
    for (std::size_t k = 0; k < dom.size(); ++k) {
      int l = c.level[dom[k]];
      if (k > 0 && l != info.level) {
        error(sp, "automorphism moves variables from different chart levels");
        return std::nullopt;
      }
      info.level = l;
    }
    return info;
  }

  // ---- resolution checks

  bool check_expr(const Expr& e) {
    using K = Expr::Kind;
    switch (e.kind) {
      case K::Name: {
        auto it = kinds_.find(e.name);
        if (it == kinds_.end()) return fail(e.span, "unknown name '" + e.name + "'");
        if (it->second != NameKind::Var && it->second != NameKind::Let)
          return fail(e.span, "'" + e.name + "' is not a variable or expression");
        return true;
      }
      case K::Sqrt: {
        if (!e.value.fits_slong_p()) return fail(e.span, "radicand out of range");
        try {
          sqrt_symbol(e.value.get_si(), ctx_->field);
        } catch (const Error& err) {
          return fail(e.span, err.what());
        }
        return true;
      }
      case K::Apply:
        if (!auto_known(e.span, e.name)) return false;
        break;
      case K::Subst:
        for (const auto& [v, x] : e.binds) {
          if (!var_index(e.span, v) || !check_expr(*x)) return false;
        }
        break;
      default: break;
    }
    for (const auto& a : e.args) {
      if (!check_expr(*a)) return false;
    }
    return true;
  }

  bool check_mat(const MatExpr& m) {
    if (m.kind == MatExpr::Kind::Name) {
      auto it = kinds_.find(m.name);
      if (it == kinds_.end() || it->second != NameKind::Matrix) return fail(m.span, "unknown matrix '" + m.name + "'");
    }
    if (m.kind == MatExpr::Kind::Catalog && !catalog::matrices().count(m.name))
      return fail(m.span, "no catalog matrix named '" + m.name + "'");
    if (m.kind == MatExpr::Kind::Literal) {
      try {
        RatMatrix::from_rows(m.rows);
      } catch (const Error& err) {
        return fail(m.span, err.what());
      }
    }
    for (const auto& a : m.args) {
      if (!check_mat(*a)) return false;
    }
    return true;
  }

  bool auto_known(Span sp, const std::string& name) {
    auto it = kinds_.find(name);
    if (it == kinds_.end() || it->second != NameKind::Auto) return fail(sp, "unknown automorphism '" + name + "'");
    return true;
  }

  bool check_claim(const ClaimExpr& c) {
    using K = ClaimExpr::Kind;
    for (const auto& e : c.exprs) {
      if (!check_expr(*e)) return false;
    }
    for (const auto& m : c.mats) {
      if (!check_mat(*m)) return false;
    }
    switch (c.kind) {
      case K::Invariant: return auto_known(c.span, c.names[0]);
      case K::CatalogOrder:
        if (!catalog::groups().count(c.names[0])) return fail(c.span, "no catalog group named '" + c.names[0] + "'");
        return true;
      case K::ElementOrder: {
        auto it = kinds_.find(c.names[0]);
        if (it == kinds_.end() || (it->second != NameKind::Matrix && it->second != NameKind::Auto))
          return fail(c.span, "'" + c.names[0] + "' is not a matrix or automorphism");
        return true;
      }
      case K::Acts:
        if (!auto_known(c.span, c.names[0])) return false;
        for (const auto& [v, e] : c.maps) {
          auto it = kinds_.find(v);
          if (it == kinds_.end() || (it->second != NameKind::Var && it->second != NameKind::Let))
            return fail(c.span, "unknown name '" + v + "'");
          if (!check_expr(*e)) return false;
        }
        return true;
      case K::Lift: return auto_known(c.span, c.names[0]) && auto_known(c.span, c.names[1]);
      default: return true;
    }
  }

  // ---- claims

  static std::string expected_text(const ClaimExpr& c) {
    using K = ClaimExpr::Kind;
    switch (c.kind) {
      case K::Identity: return render(*c.exprs[0]) + " = " + render(*c.exprs[1]);
      case K::Invariant: return c.names[0] + " fixes " + render(*c.exprs[0]);
      case K::GroupOrder:
      case K::CatalogOrder:
      case K::ElementOrder: return "order " + std::to_string(c.expected);
      case K::Rank: return "rank " + std::to_string(c.expected);
      case K::MatrixEq: return render(*c.mats[0]) + " = " + render(*c.mats[1]);
      case K::Commutes: return render(*c.mats[0]) + " commutes with " + render(*c.mats[1]);
      case K::Acts: {
        std::string s = c.names[0] + ":";
        for (std::size_t i = 0; i < c.maps.size(); ++i)
          s += (i ? ", " : " ") + c.maps[i].first + " -> " + render(*c.maps[i].second);
        return s;
      }
      case K::Lift: return c.names[0] + " induces " + c.names[1];
      case K::Representation: return "matrix product matches composition";
    }
    return "";
  }

  void package(Claim& cl, const ClaimExpr& c) {
    using K = ClaimExpr::Kind;
    std::shared_ptr<const Context> ctx = ctx_;
    switch (c.kind) {
      case K::Identity: {
        ExprPtr a = c.exprs[0], b = c.exprs[1];
        cl.pairs = [ctx, a, b] { return IdentityPairs{ctx->align(ctx->eval(*a), ctx->eval(*b))}; };
        break;
      }
      case K::Invariant: {
        std::string name = c.names[0];
        ExprPtr e = c.exprs[0];
        cl.pairs = [ctx, name, e] {
          const AutoInfo& info = ctx->autos.at(name);
          RatFunc f = ctx->eval(*e);
          RatFunc image = ctx->apply_auto(info, name, f);
          return IdentityPairs{ctx->align(image, ctx->expand_to(f, info.level))};
        };
        break;
      }
      case K::Acts: {
        std::string name = c.names[0];
        std::vector<Binding> maps = c.maps;
        cl.pairs = [ctx, name, maps] {
          const AutoInfo& info = ctx->autos.at(name);
          IdentityPairs out;
          for (const auto& [v, e] : maps) out.push_back(ctx->align(ctx->apply_auto(info, name, ctx->lookup(v)), ctx->eval(*e)));
          return out;
        };
        break;
      }
      case K::Lift: {
        std::string low = c.names[0], high = c.names[1];
        cl.pairs = [ctx, low, high] {
          const AutoInfo& lo = ctx->autos.at(low);
          const AutoInfo& hi = ctx->autos.at(high);
          IdentityPairs out;
          for (auto v : hi.a.domain())
            out.push_back(ctx->align(ctx->apply_auto(lo, low, RatFunc::variable(ctx->vars, v)), hi.a.image(v)));
          return out;
        };
        cl.check = [ctx, low, high, pairs = cl.pairs](CheckMode mode) {
          if (!(ctx->autos.at(low).a.signs() == ctx->autos.at(high).a.signs()))
            return ClaimOutcome{ClaimStatus::Fail, "the two automorphisms act differently on the coefficients"};
          return compare_pairs(pairs(), mode);
        };
        return;
      }
      case K::GroupOrder: {
        std::vector<MatExprPtr> mats = c.mats;
        long want = c.expected;
        cl.check = [ctx, mats, want](CheckMode) {
          std::size_t n = close(ctx->eval(mats)).order();
          return count_outcome(n, want, "group order");
        };
        return;
      }
      case K::CatalogOrder: {
        std::string name = c.names[0];
        long want = c.expected;
        cl.check = [name, want](CheckMode) {
          return count_outcome(close(catalog::group_generators(name)).order(), want, "group order");
        };
        return;
      }
      case K::ElementOrder: {
        std::string name = c.names[0];
        long want = c.expected;
        cl.check = [ctx, name, want](CheckMode) {
          if (auto it = ctx->matrices.find(name); it != ctx->matrices.end())
            return count_outcome(matrix_order(it->second), want, "order");
          return count_outcome(order_of(ctx->autos.at(name).a), want, "order");
        };
        return;
      }
      case K::Rank: {
        std::vector<ExprPtr> exprs = c.exprs;
        long want = c.expected;
        cl.check = [ctx, exprs, want](CheckMode) { return rank_outcome(*ctx, exprs, want); };
        return;
      }
      case K::MatrixEq:
      case K::Commutes: {
        std::vector<MatExprPtr> mats = c.mats;
        bool commute = c.kind == K::Commutes;
        cl.check = [ctx, mats, commute](CheckMode) {
          auto ms = ctx->eval(mats);
          RatMatrix lhs = commute ? ms[0] * ms[1] : ms[0];
          RatMatrix rhs = commute ? ms[1] * ms[0] : ms[1];
          if (lhs == rhs) return ClaimOutcome{ClaimStatus::Pass, ""};
          return ClaimOutcome{ClaimStatus::Fail, lhs.to_string() + " != " + rhs.to_string()};
        };
        return;
      }
      case K::Representation: {
        std::vector<MatExprPtr> mats = c.mats;
        cl.check = [ctx, mats](CheckMode) {
          auto rep = check_representation(ctx->eval(mats));
          if (rep.ok) return ClaimOutcome{ClaimStatus::Pass, std::to_string(rep.pairs_checked) + " pairs"};
          return ClaimOutcome{ClaimStatus::Fail, "elements " + std::to_string(rep.counterexample->first) + " and " +
                                                     std::to_string(rep.counterexample->second) +
                                                     " of the closure compose in the wrong order"};
        };
        return;
      }
    }
    cl.check = [pairs = cl.pairs](CheckMode mode) { return compare_pairs(pairs(), mode); };
  }

  static ClaimOutcome count_outcome(std::size_t got, long want, const char* what) {
    std::string msg = std::string(what) + " " + std::to_string(got);
    if (static_cast<long>(got) == want) return {ClaimStatus::Pass, msg};
    return {ClaimStatus::Fail, msg + ", expected " + std::to_string(want)};
  }

  static ClaimOutcome rank_outcome(const Context& ctx, const std::vector<ExprPtr>& exprs, long want) {
    std::vector<RatFunc> fs;
    std::set<std::size_t> wrt_set;
    for (const auto& e : exprs) {
      fs.push_back(ctx.eval(*e));
      for (auto v : fs.back().support()) wrt_set.insert(v);
    }
    std::vector<std::size_t> wrt(wrt_set.begin(), wrt_set.end());
    auto cert = certify_independence(fs, wrt);
    std::ostringstream os;
    os << "rank " << cert.rank << " after " << cert.attempts << " point(s)";
    if (!cert.point.empty()) {
      os << " at (";
      for (std::size_t i = 0; i < wrt.size(); ++i) os << (i ? ", " : "") << ctx.vars.name(wrt[i]) << "=" << ivl::to_string(cert.point[i]);
      os << ")";
    }
    if (static_cast<long>(cert.rank) == want) return {ClaimStatus::Pass, os.str()};
    if (want > static_cast<long>(std::min(fs.size(), wrt.size())) || static_cast<long>(cert.rank) > want)
      return {ClaimStatus::Fail, os.str()};
    return {ClaimStatus::Inconclusive, os.str()};
  }

  bool fail(Span sp, std::string msg) {
    error(sp, std::move(msg));
    return false;
  }
  void error(Span sp, std::string msg) { diags_.push_back(Diagnostic{sp, std::move(msg)}); }

  std::vector<Diagnostic>& diags_;
  std::shared_ptr<Context> ctx_;
  std::map<std::string, NameKind> kinds_;
  std::set<std::size_t> used_below_;
  std::set<std::string> ids_;
  std::vector<Claim> claims_;
};

}  // namespace

const VarSet& context_vars(const ScriptContext& c) { return c.vars; }
const FieldDescriptor& context_field(const ScriptContext& c) { return c.field; }

RatFunc evaluate(const ScriptContext& c, const Expr& e) {
  std::vector<std::string> names;
  collect_names(e, names);
  for (const auto& n : names) {
    if (!c.lets.count(n) && !c.vars.index_of(n)) throw Error("unknown name '" + n + "'");
  }
  return c.eval(e);
}

CompiledScript compile(const Script& script) {
  CompiledScript out;
  Compiler c(out.diagnostics);
  try {
    out.claims = c.run(script);
    out.context = c.context();
  } catch (const std::exception& e) {
    out.diagnostics.push_back(Diagnostic{Span{}, e.what()});
  }
  if (!out.diagnostics.empty()) out.claims.clear();
  return out;
}

CompiledScript compile_source(std::string_view source) {
  ParseResult p = parse(source);
  if (!p.ok()) return CompiledScript{{}, std::move(p.diagnostics), nullptr};
  return compile(p.script);
}

LedgerReport execute(std::string_view source, const RunOptions& opt) {
  CompiledScript c = compile_source(source);
  if (!c.ok()) {
    LedgerReport r;
    r.diagnostics = std::move(c.diagnostics);
    return r;
  }
  return run(c.claims, opt);
}

}  // namespace ivl
