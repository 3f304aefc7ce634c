#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "volform/dsl/ast.hpp"

namespace volform::dsl {

enum class Tok {
  Ident,
  Number,
  Deriv,  // d/dX, text holds X
  LBrace,
  RBrace,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Comma,
  Semi,
  Colon,
  Assign,
  Plus,
  Minus,
  Star,
  Slash,
  Caret,
  Arrow,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  Pos pos;
};

/// Splits source text into tokens. `#` and `//` start comments that run to
/// the end of the line. Throws ParseError on a stray character.
std::vector<Token> lex(std::string_view source);

/// Human-readable token, e.g. "';'" or "identifier 'x'".
std::string describe(const Token& t);

}  // namespace volform::dsl
