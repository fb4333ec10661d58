#include "dsl_lexer.hpp"

#include <cctype>

namespace ivl::dsl {

std::string Diagnostic::to_string() const {
  return std::to_string(span.line) + ":" + std::to_string(span.col) + ": " +
         (severity == Severity::Error ? "error: " : "warning: ") + message;
}

const char* token_name(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Int: return "integer";
    case Tok::String: return "string";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::Comma: return "','";
    case Tok::Semi: return "';'";
    case Tok::Assign: return "'='";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Slash: return "'/'";
    case Tok::Caret: return "'^'";
    case Tok::Arrow: return "'->'";
    case Tok::EqEq: return "'=='";
    case Tok::End: return "end of input";
    case Tok::Bad: return "invalid character";
  }
  return "?";
}

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
// Dots allow catalog-style names such as A.sigma.
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.'; }

}  // namespace

std::vector<Token> lex(std::string_view src, std::vector<Diagnostic>& diags) {
  std::vector<Token> out;
  std::size_t i = 0;
  int line = 1, col = 1;
  auto advance = [&](std::size_t n = 1) {
    for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  auto push = [&](Tok k, std::string text, Span sp) { out.push_back(Token{k, std::move(text), sp}); };

  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance();
      continue;
    }
    if (c == '#' || (c == '/' && i + 1 < src.size() && src[i + 1] == '/')) {
      while (i < src.size() && src[i] != '\n') advance();
      continue;
    }
    Span sp{line, col};
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      push(Tok::Ident, std::string(src.substr(i, j - i)), sp);
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      push(Tok::Int, std::string(src.substr(i, j - i)), sp);
      advance(j - i);
      continue;
    }
    if (c == '"') {
      advance();
      std::string body;
      bool closed = false;
      while (i < src.size()) {
        char d = src[i];
        if (d == '"') {
          closed = true;
          advance();
          break;
        }
        if (d == '\n') break;
        if (d == '\\' && i + 1 < src.size()) {
          advance();
          d = src[i];
        }
        body.push_back(d);
        advance();
      }
      if (!closed) diags.push_back({sp, "unterminated string"});
      push(Tok::String, std::move(body), sp);
      continue;
    }
    auto two = [&](char a, char b) { return c == a && i + 1 < src.size() && src[i + 1] == b; };
    if (two('-', '>')) {
      push(Tok::Arrow, "->", sp);
      advance(2);
      continue;
    }
    if (two('=', '=')) {
      push(Tok::EqEq, "==", sp);
      advance(2);
      continue;
    }
    Tok k = Tok::Bad;
    switch (c) {
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      case '[': k = Tok::LBracket; break;
      case ']': k = Tok::RBracket; break;
      case ',': k = Tok::Comma; break;
      case ';': k = Tok::Semi; break;
      case '=': k = Tok::Assign; break;
      case '+': k = Tok::Plus; break;
      case '-': k = Tok::Minus; break;
      case '*': k = Tok::Star; break;
      case '/': k = Tok::Slash; break;
      case '^': k = Tok::Caret; break;
      default: break;
    }
    if (k == Tok::Bad) diags.push_back({sp, std::string("unexpected character '") + c + "'"});
    push(k, std::string(1, c), sp);
    advance();
  }
  out.push_back(Token{Tok::End, "", Span{line, col}});
  return out;
}

}  // namespace ivl::dsl
