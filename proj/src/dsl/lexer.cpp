#include "volform/dsl/lexer.hpp"

#include <cctype>

namespace volform::dsl {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

}  // namespace

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  Pos pos;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++pos.line;
        pos.column = 1;
      } else {
        ++pos.column;
      }
    }
  };
  auto peek = [&](std::size_t k) { return i + k < src.size() ? src[i + k] : '\0'; };

  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#' || (c == '/' && peek(1) == '/')) {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    const Pos start = pos;
    if (c == 'd' && peek(1) == '/' && peek(2) == 'd' && ident_start(peek(3))) {
      std::size_t n = 3;
      while (ident_char(peek(n))) ++n;
      out.push_back({Tok::Deriv, std::string(src.substr(i + 3, n - 3)), start});
      advance(n);
      continue;
    }
    if (ident_start(c)) {
      std::size_t n = 1;
      while (ident_char(peek(n))) ++n;
      out.push_back({Tok::Ident, std::string(src.substr(i, n)), start});
      advance(n);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t n = 1;
      while (std::isdigit(static_cast<unsigned char>(peek(n)))) ++n;
      out.push_back({Tok::Number, std::string(src.substr(i, n)), start});
      advance(n);
      continue;
    }
    if (c == '-' && peek(1) == '>') {
      out.push_back({Tok::Arrow, "->", start});
      advance(2);
      continue;
    }
    Tok kind;
    switch (c) {
      case '{': kind = Tok::LBrace; break;
      case '}': kind = Tok::RBrace; break;
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      case '[': kind = Tok::LBracket; break;
      case ']': kind = Tok::RBracket; break;
      case ',': kind = Tok::Comma; break;
      case ';': kind = Tok::Semi; break;
      case ':': kind = Tok::Colon; break;
      case '=': kind = Tok::Assign; break;
      case '+': kind = Tok::Plus; break;
      case '-': kind = Tok::Minus; break;
      case '*': kind = Tok::Star; break;
      case '/': kind = Tok::Slash; break;
      case '^': kind = Tok::Caret; break;
      default:
        throw ParseError(start, std::string("unexpected character '") + c + "'");
    }
    out.push_back({kind, std::string(1, c), start});
    advance(1);
  }
  out.push_back({Tok::End, "", pos});
  return out;
}

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::Ident: return "identifier '" + t.text + "'";
    case Tok::Number: return "number " + t.text;
    case Tok::Deriv: return "'d/d" + t.text + "'";
    case Tok::End: return "end of input";
    default: return "'" + t.text + "'";
  }
}

}  // namespace volform::dsl
