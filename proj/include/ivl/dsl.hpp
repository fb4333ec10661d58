#pragma once

// The `.ivl` assertion language: syntax tree, parser, renderer.
//
//   field Q adjoin sqrt(-1), sqrt(2);
//   vars x1 x2 x3 x4;
//   matrix S = [[-1/2,1/2,1/2,1/2], ...];
//   auto Sx = linear(S; x1, x2, x3, x4);
//   auto R = galois(sqrt(-1) -> -1) with y1 -> -y4, y2 -> y3, ...;
//   let z1 = y1/y2;
//   chart z1 = y1/y2, z2 = y3/y4;
//   assert "s4.step3.rho-z1" acts(R, z1 -> -1/z2) ref "rho(z1) = -1/z2";

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "ivl/coeff_field.hpp"

namespace ivl::dsl {

struct Span {
  int line = 0;
  int col = 0;
};

enum class Severity { Error, Warning };

struct Diagnostic {
  Span span;
  std::string message;
  Severity severity = Severity::Error;

  std::string to_string() const;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;
using Binding = std::pair<std::string, ExprPtr>;  // name -> expression

struct Expr {
  enum class Kind { Int, Name, Neg, Add, Sub, Mul, Div, Pow, Sqrt, Apply, Subst, Expand };
  Kind kind = Kind::Int;
  Span span;
  BigInt value;                // Int; Sqrt radicand
  std::string name;            // Name; Apply automorphism
  long exponent = 0;           // Pow
  std::vector<ExprPtr> args;   // operands
  std::vector<Binding> binds;  // Subst
};

struct MatExpr;
using MatExprPtr = std::shared_ptr<const MatExpr>;

struct MatExpr {
  enum class Kind { Literal, Name, Mul, Neg, Conj, Inv, Transpose, Catalog };
  Kind kind = Kind::Literal;
  Span span;
  std::vector<std::vector<BigRational>> rows;  // Literal
  std::string name;                            // Name; Catalog
  std::vector<MatExprPtr> args;
};

struct FieldDecl {
  std::vector<long> radicands;
};

struct VarsDecl {
  std::vector<std::string> names;
};

struct MatrixDecl {
  std::string name;
  MatExprPtr value;
};

struct AutoExpr {
  enum class Kind { Linear, Monomial, Galois };
  Kind kind = Kind::Galois;
  MatExprPtr matrix;                       // Linear
  std::vector<std::vector<long>> exps;     // Monomial
  std::vector<ExprPtr> coeffs;             // Monomial
  std::vector<std::string> vars;           // Linear, Monomial; empty = default
  std::vector<std::pair<long, int>> signs; // Galois
  std::vector<Binding> maps;               // Galois
};

struct AutoDecl {
  std::string name;
  AutoExpr value;
};

struct LetDecl {
  std::string name;
  ExprPtr value;
};

struct ChartDecl {
  std::vector<Binding> defs;
};

struct ClaimExpr {
  enum class Kind {
    Identity,        // identity(e1, e2)
    Invariant,       // invariant(A, e)
    GroupOrder,      // order(group(M, ...)) == n
    CatalogOrder,    // order(catalog("name")) == n
    ElementOrder,    // order(NAME) == n for a matrix or automorphism
    Rank,            // rank(e, ...) == n
    MatrixEq,        // matrix_eq(M, N)
    Commutes,        // commutes(M, N)
    Acts,            // acts(A, v -> e, ...)
    Lift,            // acts(A, B)
    Representation,  // representation(M, ...)
  };
  Kind kind = Kind::Identity;
  Span span;
  std::vector<ExprPtr> exprs;
  std::vector<MatExprPtr> mats;
  std::vector<std::string> names;
  std::vector<Binding> maps;
  long expected = 0;
};

struct AssertStmt {
  std::optional<std::string> id;
  ClaimExpr claim;
  std::optional<std::string> ref;
};

using StmtNode = std::variant<FieldDecl, VarsDecl, MatrixDecl, AutoDecl, LetDecl, ChartDecl, AssertStmt>;

struct Stmt {
  Span span;
  StmtNode node;
};

struct Script {
  std::vector<Stmt> stmts;
};

struct ParseResult {
  Script script;
  std::vector<Diagnostic> diagnostics;
  bool ok() const { return diagnostics.empty(); }
};

// Never throws; malformed statements are reported and skipped.
ParseResult parse(std::string_view source);
// Parses a lone expression (used by the CLI `eval` command).
std::optional<ExprPtr> parse_expression(std::string_view source, std::vector<Diagnostic>& diags);

std::string render(const Script& s);
std::string render(const Stmt& s);
std::string render(const Expr& e);
std::string render(const MatExpr& m);

// Structural equality, ignoring spans.
bool same(const Expr& a, const Expr& b);
bool same(const MatExpr& a, const MatExpr& b);
bool same(const Script& a, const Script& b);

// Names of variables and lets referenced by an expression.
void collect_names(const Expr& e, std::vector<std::string>& out);

}  // namespace ivl::dsl
