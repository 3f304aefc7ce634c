#pragma once

#include <optional>
#include <string>
#include <vector>

#include "volform/dsl/ast.hpp"
#include "volform/scenarios.hpp"

namespace volform::dsl {

/// Result of evaluating an expression. Fields carry raw ambient
/// coefficients so that tangency is only demanded where a VectorField is.
struct Value {
  enum class Sort { Scalar, Field, Form, Tuple, List };
  Sort sort = Sort::Scalar;
  std::optional<LaurentPoly> scalar;
  std::vector<LaurentPoly> field;
  std::optional<DiffForm> form;
  std::vector<Value> items;

  static Value of(LaurentPoly p);
  static Value of(const VectorField& v);
  static Value of(DiffForm a);
};

std::string sort_name(Value::Sort s);

/// Evaluates over the scenario's chart and named objects. Identifiers
/// resolve to scalars, fields, forms (the volume included), coordinates,
/// and dX for a coordinate X. Throws SemanticError.
Value evaluate(const Expr& e, const Scenario& scope);

LaurentPoly eval_scalar(const Expr& e, const Scenario& scope);
/// Throws SemanticError when the result is not tangent.
VectorField eval_field(const Expr& e, const Scenario& scope);
DiffForm eval_form(const Expr& e, const Scenario& scope);
Rational eval_constant(const Expr& e, const Scenario& scope);
/// A list of equally long lists of constants.
Matrix eval_matrix(const Expr& e, const Scenario& scope);

}  // namespace volform::dsl
