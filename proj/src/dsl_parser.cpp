#include <set>
#include <stdexcept>

#include "dsl_lexer.hpp"
#include "ivl/dsl.hpp"

namespace ivl::dsl {

namespace {

const std::set<std::string, std::less<>> kReserved = {
    "field", "vars",     "matrix",   "auto",   "let",       "chart",     "assert",         "ref",
    "with",  "linear",   "monomial", "galois", "sqrt",      "apply",     "subst",          "expand",
    "group", "catalog",  "order",    "rank",   "identity",  "invariant", "acts",           "matrix_eq",
    "commutes", "representation", "conj", "inv", "transpose", "adjoin"};

struct Failure {
  Diagnostic diag;
};

class Parser {
 public:
  Parser(std::vector<Token> toks, std::vector<Diagnostic>& diags) : t_(std::move(toks)), diags_(diags) {}

  Script script() {
    Script s;
    while (peek().kind != Tok::End) {
      std::size_t start = pos_;
      try {
        s.stmts.push_back(statement());
      } catch (const Failure& f) {
        diags_.push_back(f.diag);
        recover(start);
      }
    }
    return s;
  }

  std::optional<ExprPtr> lone_expression() {
    try {
      ExprPtr e = expr();
      if (peek().kind != Tok::End) fail("unexpected " + describe(peek()) + " after expression");
      return e;
    } catch (const Failure& f) {
      diags_.push_back(f.diag);
      return std::nullopt;
    }
  }

 private:
  const Token& peek(std::size_t k = 0) const { return t_[std::min(pos_ + k, t_.size() - 1)]; }
  const Token& next() {
    const Token& tk = t_[pos_];
    if (pos_ + 1 < t_.size()) ++pos_;
    return tk;
  }
  bool at(Tok k) const { return peek().kind == k; }
  bool at_word(std::string_view w) const { return peek().kind == Tok::Ident && peek().text == w; }
  bool accept(Tok k) {
    if (!at(k)) return false;
    next();
    return true;
  }
  bool accept_word(std::string_view w) {
    if (!at_word(w)) return false;
    next();
    return true;
  }

  static std::string describe(const Token& tk) {
    if (tk.kind == Tok::Ident || tk.kind == Tok::Int) return "'" + tk.text + "'";
    return token_name(tk.kind);
  }

  [[noreturn]] void fail(std::string msg) const { throw Failure{Diagnostic{peek().span, std::move(msg)}}; }
  [[noreturn]] void fail_at(Span sp, std::string msg) const { throw Failure{Diagnostic{sp, std::move(msg)}}; }

  const Token& expect(Tok k) {
    if (!at(k)) fail(std::string("expected ") + token_name(k) + ", found " + describe(peek()));
    return next();
  }
  void expect_word(std::string_view w) {
    if (!at_word(w)) fail("expected '" + std::string(w) + "', found " + describe(peek()));
    next();
  }

  std::string name() {
    if (!at(Tok::Ident)) fail("expected a name, found " + describe(peek()));
    if (kReserved.count(peek().text)) fail("'" + peek().text + "' is a reserved word");
    return next().text;
  }

  long integer() {
    const Token& tk = expect(Tok::Int);
    try {
      return std::stol(tk.text);
    } catch (const std::out_of_range&) {
      fail_at(tk.span, "integer " + tk.text + " is too large");
    }
  }
  long signed_integer() {
    bool neg = accept(Tok::Minus);
    long v = integer();
    return neg ? -v : v;
  }
  BigRational rational() {
    bool neg = accept(Tok::Minus);
    BigRational q(BigInt(expect(Tok::Int).text));
    if (accept(Tok::Slash)) {
      Span sp = peek().span;
      BigInt d(expect(Tok::Int).text);
      if (d == 0) fail_at(sp, "zero denominator");
      q /= BigRational(d);
    }
    q.canonicalize();
    return neg ? BigRational(-q) : q;
  }
  std::string string_lit() { return expect(Tok::String).text; }

  void recover(std::size_t start) {
    if (pos_ == start) next();
    while (!at(Tok::End) && !at(Tok::Semi)) next();
    accept(Tok::Semi);
  }

  // ---- statements

  Stmt statement() {
    Span sp = peek().span;
    if (!at(Tok::Ident)) fail("expected a statement, found " + describe(peek()));
    std::string kw = peek().text;
    StmtNode node;
    if (kw == "field") {
      next();
      node = field_decl();
    } else if (kw == "vars") {
      next();
      VarsDecl v;
      do {
        v.names.push_back(name());
        accept(Tok::Comma);
      } while (at(Tok::Ident));
      node = std::move(v);
    } else if (kw == "matrix") {
      next();
      MatrixDecl m;
      m.name = name();
      expect(Tok::Assign);
      m.value = matexpr();
      node = std::move(m);
    } else if (kw == "auto") {
      next();
      AutoDecl a;
      a.name = name();
      expect(Tok::Assign);
      a.value = auto_expr();
      node = std::move(a);
    } else if (kw == "let") {
      next();
      LetDecl l;
      l.name = name();
      expect(Tok::Assign);
      l.value = expr();
      node = std::move(l);
    } else if (kw == "chart") {
      next();
      ChartDecl c;
      do {
        std::string v = name();
        expect(Tok::Assign);
        c.defs.emplace_back(std::move(v), expr());
      } while (accept(Tok::Comma));
      node = std::move(c);
    } else if (kw == "assert") {
      next();
      AssertStmt a;
      if (at(Tok::String)) a.id = string_lit();
      a.claim = claim();
      if (accept_word("ref")) a.ref = string_lit();
      node = std::move(a);
    } else {
      fail("unknown statement '" + kw + "'");
    }
    expect(Tok::Semi);
    return Stmt{sp, std::move(node)};
  }

  FieldDecl field_decl() {
    FieldDecl f;
    if (!at_word("Q")) fail("expected 'Q', found " + describe(peek()));
    next();
    if (accept_word("adjoin")) {
      do {
        expect_word("sqrt");
        expect(Tok::LParen);
        f.radicands.push_back(signed_integer());
        expect(Tok::RParen);
      } while (accept(Tok::Comma));
    }
    return f;
  }

  std::vector<std::string> name_list() {
    std::vector<std::string> out;
    do {
      out.push_back(name());
    } while (accept(Tok::Comma));
    return out;
  }

  Binding binding() {
    std::string v = name();
    expect(Tok::Arrow);
    return {std::move(v), expr()};
  }

  AutoExpr auto_expr() {
    AutoExpr a;
    if (accept_word("linear")) {
      a.kind = AutoExpr::Kind::Linear;
      expect(Tok::LParen);
      a.matrix = matexpr();
      if (accept(Tok::Semi)) a.vars = name_list();
      expect(Tok::RParen);
    } else if (accept_word("monomial")) {
      a.kind = AutoExpr::Kind::Monomial;
      expect(Tok::LParen);
      expect(Tok::LBracket);
      do {
        expect(Tok::LBracket);
        std::vector<long> row;
        do {
          row.push_back(signed_integer());
        } while (accept(Tok::Comma));
        expect(Tok::RBracket);
        a.exps.push_back(std::move(row));
      } while (accept(Tok::Comma));
      expect(Tok::RBracket);
      expect(Tok::Semi);
      do {
        a.coeffs.push_back(expr());
      } while (accept(Tok::Comma));
      if (accept(Tok::Semi)) a.vars = name_list();
      expect(Tok::RParen);
    } else if (accept_word("galois")) {
      a.kind = AutoExpr::Kind::Galois;
      expect(Tok::LParen);
      if (!at(Tok::RParen)) {
        do {
          expect_word("sqrt");
          expect(Tok::LParen);
          long d = signed_integer();
          expect(Tok::RParen);
          expect(Tok::Arrow);
          Span sp = peek().span;
          long s = signed_integer();
          if (s != 1 && s != -1) fail_at(sp, "a Galois sign must be 1 or -1");
          a.signs.emplace_back(d, static_cast<int>(s));
        } while (accept(Tok::Comma));
      }
      expect(Tok::RParen);
      if (accept_word("with")) {
        do {
          a.maps.push_back(binding());
        } while (accept(Tok::Comma));
      }
    } else {
      fail("expected linear, monomial or galois, found " + describe(peek()));
    }
    return a;
  }

  long expected_count() {
    expect(Tok::EqEq);
    return integer();
  }

  ClaimExpr claim() {
    ClaimExpr c;
    c.span = peek().span;
    if (!at(Tok::Ident)) fail("expected a claim, found " + describe(peek()));
    std::string kw = next().text;
    using K = ClaimExpr::Kind;
    expect(Tok::LParen);
    if (kw == "identity") {
      c.kind = K::Identity;
      c.exprs.push_back(expr());
      expect(Tok::Comma);
      c.exprs.push_back(expr());
      expect(Tok::RParen);
    } else if (kw == "invariant") {
      c.kind = K::Invariant;
      c.names.push_back(name());
      expect(Tok::Comma);
      c.exprs.push_back(expr());
      expect(Tok::RParen);
    } else if (kw == "order") {
      if (accept_word("group")) {
        c.kind = K::GroupOrder;
        expect(Tok::LParen);
        do {
          c.mats.push_back(matexpr());
        } while (accept(Tok::Comma));
        expect(Tok::RParen);
      } else if (at_word("catalog")) {
        next();
        c.kind = K::CatalogOrder;
        expect(Tok::LParen);
        c.names.push_back(string_lit());
        expect(Tok::RParen);
      } else {
        c.kind = K::ElementOrder;
        c.names.push_back(name());
      }
      expect(Tok::RParen);
      c.expected = expected_count();
    } else if (kw == "rank") {
      c.kind = K::Rank;
      do {
        c.exprs.push_back(expr());
      } while (accept(Tok::Comma));
      expect(Tok::RParen);
      c.expected = expected_count();
    } else if (kw == "matrix_eq" || kw == "commutes") {
      c.kind = kw == "matrix_eq" ? K::MatrixEq : K::Commutes;
      c.mats.push_back(matexpr());
      expect(Tok::Comma);
      c.mats.push_back(matexpr());
      expect(Tok::RParen);
    } else if (kw == "acts") {
      c.names.push_back(name());
      expect(Tok::Comma);
      if (peek(1).kind == Tok::Arrow) {
        c.kind = K::Acts;
        do {
          c.maps.push_back(binding());
        } while (accept(Tok::Comma));
      } else {
        c.kind = K::Lift;
        c.names.push_back(name());
      }
      expect(Tok::RParen);
    } else if (kw == "representation") {
      c.kind = K::Representation;
      do {
        c.mats.push_back(matexpr());
      } while (accept(Tok::Comma));
      expect(Tok::RParen);
    } else {
      fail_at(c.span, "unknown claim '" + kw + "'");
    }
    return c;
  }

  // ---- matrices

  MatExprPtr mat_node(MatExpr m) { return std::make_shared<const MatExpr>(std::move(m)); }

  MatExprPtr matexpr() {
    MatExprPtr lhs = mat_unary();
    while (at(Tok::Star)) {
      Span sp = peek().span;
      next();
      MatExpr m;
      m.kind = MatExpr::Kind::Mul;
      m.span = sp;
      m.args = {lhs, mat_unary()};
      lhs = mat_node(std::move(m));
    }
    return lhs;
  }

  MatExprPtr mat_unary() {
    if (at(Tok::Minus)) {
      MatExpr m;
      m.kind = MatExpr::Kind::Neg;
      m.span = next().span;
      m.args = {mat_unary()};
      return mat_node(std::move(m));
    }
    return mat_primary();
  }

  MatExprPtr mat_primary() {
    MatExpr m;
    m.span = peek().span;
    if (accept(Tok::LParen)) {
      MatExprPtr inner = matexpr();
      expect(Tok::RParen);
      return inner;
    }
    if (accept(Tok::LBracket)) {
      m.kind = MatExpr::Kind::Literal;
      do {
        expect(Tok::LBracket);
        std::vector<BigRational> row;
        do {
          row.push_back(rational());
        } while (accept(Tok::Comma));
        expect(Tok::RBracket);
        m.rows.push_back(std::move(row));
      } while (accept(Tok::Comma));
      expect(Tok::RBracket);
      for (const auto& r : m.rows)
        if (r.size() != m.rows.size()) fail_at(m.span, "matrix literal is not square");
      return mat_node(std::move(m));
    }
    if (at_word("conj") || at_word("inv") || at_word("transpose") || at_word("catalog")) {
      std::string kw = next().text;
      expect(Tok::LParen);
      if (kw == "catalog") {
        m.kind = MatExpr::Kind::Catalog;
        m.name = string_lit();
      } else if (kw == "conj") {
        m.kind = MatExpr::Kind::Conj;
        m.args.push_back(matexpr());
        expect(Tok::Comma);
        m.args.push_back(matexpr());
      } else {
        m.kind = kw == "inv" ? MatExpr::Kind::Inv : MatExpr::Kind::Transpose;
        m.args.push_back(matexpr());
      }
      expect(Tok::RParen);
      return mat_node(std::move(m));
    }
    m.kind = MatExpr::Kind::Name;
    m.name = name();
    return mat_node(std::move(m));
  }

  // ---- expressions

  static ExprPtr node(Expr e) { return std::make_shared<const Expr>(std::move(e)); }
  static ExprPtr binary(Expr::Kind k, Span sp, ExprPtr a, ExprPtr b) {
    Expr e;
    e.kind = k;
    e.span = sp;
    e.args = {std::move(a), std::move(b)};
    return node(std::move(e));
  }

  ExprPtr expr() {
    ExprPtr lhs = term();
    while (at(Tok::Plus) || at(Tok::Minus)) {
      const Token& op = next();
      Expr::Kind k = op.kind == Tok::Plus ? Expr::Kind::Add : Expr::Kind::Sub;
      lhs = binary(k, op.span, lhs, term());
    }
    return lhs;
  }

  ExprPtr term() {
    ExprPtr lhs = unary();
    while (at(Tok::Star) || at(Tok::Slash)) {
      const Token& op = next();
      Expr::Kind k = op.kind == Tok::Star ? Expr::Kind::Mul : Expr::Kind::Div;
      lhs = binary(k, op.span, lhs, unary());
    }
    return lhs;
  }

  ExprPtr unary() {
    if (at(Tok::Minus)) {
      Expr e;
      e.kind = Expr::Kind::Neg;
      e.span = next().span;
      e.args = {unary()};
      return node(std::move(e));
    }
    return power();
  }

  ExprPtr power() {
    ExprPtr base = primary();
    if (!at(Tok::Caret)) return base;
    Expr e;
    e.kind = Expr::Kind::Pow;
    e.span = next().span;
    if (accept(Tok::LParen)) {
      e.exponent = signed_integer();
      expect(Tok::RParen);
    } else {
      e.exponent = signed_integer();
    }
    e.args = {base};
    if (at(Tok::Caret)) fail("chained '^' needs parentheses");
    return node(std::move(e));
  }

  ExprPtr primary() {
    Expr e;
    e.span = peek().span;
    if (at(Tok::Int)) {
      e.kind = Expr::Kind::Int;
      e.value = BigInt(next().text);
      return node(std::move(e));
    }
    if (accept(Tok::LParen)) {
      ExprPtr inner = expr();
      expect(Tok::RParen);
      return inner;
    }
    if (!at(Tok::Ident)) fail("expected an expression, found " + describe(peek()));
    const std::string& w = peek().text;
    if (w == "sqrt") {
      next();
      e.kind = Expr::Kind::Sqrt;
      expect(Tok::LParen);
      e.value = signed_integer();
      expect(Tok::RParen);
    } else if (w == "apply") {
      next();
      e.kind = Expr::Kind::Apply;
      expect(Tok::LParen);
      e.name = name();
      expect(Tok::Comma);
      e.args = {expr()};
      expect(Tok::RParen);
    } else if (w == "subst") {
      next();
      e.kind = Expr::Kind::Subst;
      expect(Tok::LParen);
      e.args = {expr()};
      expect(Tok::Comma);
      do {
        e.binds.push_back(binding());
      } while (accept(Tok::Comma));
      expect(Tok::RParen);
    } else if (w == "expand") {
      next();
      e.kind = Expr::Kind::Expand;
      expect(Tok::LParen);
      e.args = {expr()};
      expect(Tok::RParen);
    } else {
      e.kind = Expr::Kind::Name;
      e.name = name();
    }
    return node(std::move(e));
  }

  std::vector<Token> t_;
  std::size_t pos_ = 0;
  std::vector<Diagnostic>& diags_;
};

}  // namespace

ParseResult parse(std::string_view source) {
  ParseResult r;
  auto toks = lex(source, r.diagnostics);
  Parser p(std::move(toks), r.diagnostics);
  r.script = p.script();
  return r;
}

std::optional<ExprPtr> parse_expression(std::string_view source, std::vector<Diagnostic>& diags) {
  std::size_t before = diags.size();
  auto toks = lex(source, diags);
  if (diags.size() != before) return std::nullopt;
  Parser p(std::move(toks), diags);
  return p.lone_expression();
}

}  // namespace ivl::dsl
