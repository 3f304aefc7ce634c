#pragma once

#include <string>

#include "volform/dsl/ast.hpp"

namespace volform::dsl {

/// Canonical text with the fewest parentheses that reparse to the same tree.
std::string print(const Expr& e);
/// One statement per line; chart and group blocks span several lines.
std::string print(const Document& doc);

}  // namespace volform::dsl
