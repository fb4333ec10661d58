#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ivl/dsl.hpp"

namespace ivl::dsl {

enum class Tok {
  Ident,
  Int,
  String,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Comma,
  Semi,
  Assign,
  Plus,
  Minus,
  Star,
  Slash,
  Caret,
  Arrow,
  EqEq,
  End,
  Bad,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;  // identifier, digits, or unescaped string body
  Span span;
};

// `#` and `//` start comments running to end of line. Unknown characters
// become Bad tokens with a diagnostic.
std::vector<Token> lex(std::string_view source, std::vector<Diagnostic>& diags);

const char* token_name(Tok t);

}  // namespace ivl::dsl
