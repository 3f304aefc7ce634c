#pragma once

#include <string_view>

#include "volform/dsl/ast.hpp"

namespace volform::dsl {

/// Parses a whole document. Throws ParseError with the offending position.
Document parse(std::string_view source);

/// Parses a single expression (the whole input).
ExprPtr parse_expression(std::string_view source);

/// Statement and clause words; not usable as names.
bool is_keyword(std::string_view word);
/// d, iota, lie, div: callable, not usable as names.
bool is_builtin(std::string_view word);

}  // namespace volform::dsl
