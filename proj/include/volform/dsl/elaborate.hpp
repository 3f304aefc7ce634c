#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "volform/dsl/ast.hpp"
#include "volform/scenarios.hpp"

namespace volform::dsl {

struct CheckKind {
  std::string name;
  std::size_t min_args;
  std::size_t max_args;  // SIZE_MAX for variadic
  std::string signature;
  std::string summary;
};

/// Every check kind understood by the runner.
const std::vector<CheckKind>& check_kinds();
const CheckKind* find_check_kind(std::string_view name);

/// Builds the scenario a document describes. Statements are processed in
/// order; the chart block comes first. Throws SemanticError.
Scenario elaborate(const Document& doc, std::string name);

/// Ring, relations, volume, fields, forms, scalars, actions, points and
/// checks agree (groups by name and size).
bool same_scenario(const Scenario& a, const Scenario& b);

}  // namespace volform::dsl
