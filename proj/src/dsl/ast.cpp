#include "volform/dsl/ast.hpp"

namespace volform::dsl {

namespace {

ExprPtr make(Expr::Kind k, Pos p, std::string text, char op, std::vector<ExprPtr> children) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  e->pos = p;
  e->text = std::move(text);
  e->op = op;
  e->children = std::move(children);
  return e;
}

bool same_exprs(const std::vector<ExprPtr>& a, const std::vector<ExprPtr>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!same_expr(*a[i], *b[i])) return false;
  }
  return true;
}

bool same_bindings(const std::vector<Binding>& a, const std::vector<Binding>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].name != b[i].name || !same_expr(*a[i].value, *b[i].value)) return false;
  }
  return true;
}

bool same_vars(const std::vector<VarDecl>& a, const std::vector<VarDecl>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].name != b[i].name || a[i].invertible != b[i].invertible) return false;
  }
  return true;
}

struct SameStatement {
  const Statement& other;

  bool operator()(const ChartStmt& a) const {
    const auto& b = std::get<ChartStmt>(other);
    if (!same_vars(a.vars, b.vars) || !same_vars(a.inverts, b.inverts) || a.rels.size() != b.rels.size()) return false;
    for (std::size_t i = 0; i < a.rels.size(); ++i) {
      if (a.rels[i].solve != b.rels[i].solve || !same_expr(*a.rels[i].poly, *b.rels[i].poly)) return false;
    }
    return true;
  }
  bool operator()(const DefStmt& a) const {
    const auto& b = std::get<DefStmt>(other);
    return a.kind == b.kind && a.name == b.name && same_expr(*a.value, *b.value);
  }
  bool operator()(const ActionStmt& a) const {
    const auto& b = std::get<ActionStmt>(other);
    return a.name == b.name && a.order == b.order && same_bindings(a.images, b.images);
  }
  bool operator()(const PointStmt& a) const {
    const auto& b = std::get<PointStmt>(other);
    return a.name == b.name && same_bindings(a.values, b.values);
  }
  bool operator()(const GroupStmt& a) const {
    const auto& b = std::get<GroupStmt>(other);
    return a.name == b.name && a.size == b.size && same_exprs(a.basis, b.basis) && same_bindings(a.elements, b.elements);
  }
  bool operator()(const CheckStmt& a) const {
    const auto& b = std::get<CheckStmt>(other);
    return a.kind == b.kind && a.expect == b.expect && same_exprs(a.args, b.args);
  }
};

}  // namespace

ExprPtr Expr::number(Pos p, std::string digits) { return make(Kind::Number, p, std::move(digits), 0, {}); }
ExprPtr Expr::ident(Pos p, std::string name) { return make(Kind::Ident, p, std::move(name), 0, {}); }
ExprPtr Expr::deriv(Pos p, std::string var) { return make(Kind::Deriv, p, std::move(var), 0, {}); }
ExprPtr Expr::neg(Pos p, ExprPtr e) { return make(Kind::Neg, p, "", 0, {std::move(e)}); }
ExprPtr Expr::binary(Pos p, char op, ExprPtr l, ExprPtr r) {
  return make(Kind::Binary, p, "", op, {std::move(l), std::move(r)});
}
ExprPtr Expr::call(Pos p, std::string name, std::vector<ExprPtr> args) {
  return make(Kind::Call, p, std::move(name), 0, std::move(args));
}
ExprPtr Expr::list(Pos p, std::vector<ExprPtr> items) { return make(Kind::List, p, "", 0, std::move(items)); }
ExprPtr Expr::tuple(Pos p, std::vector<ExprPtr> items) { return make(Kind::Tuple, p, "", 0, std::move(items)); }

bool same_expr(const Expr& a, const Expr& b) {
  return a.kind == b.kind && a.text == b.text && a.op == b.op && same_exprs(a.children, b.children);
}

bool same_document(const Document& a, const Document& b) {
  if (a.statements.size() != b.statements.size()) return false;
  for (std::size_t i = 0; i < a.statements.size(); ++i) {
    if (a.statements[i].index() != b.statements[i].index()) return false;
    if (!std::visit(SameStatement{b.statements[i]}, a.statements[i])) return false;
  }
  return true;
}

}  // namespace volform::dsl
