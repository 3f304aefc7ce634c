#include "volform/dsl/printer.hpp"

#include <sstream>

namespace volform::dsl {

namespace {

enum Prec { Sum = 1, Product = 2, Unary = 3, Power = 4, Primary = 5 };

int precedence(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Neg: return Unary;
    case Expr::Kind::Binary:
      if (e.op == '+' || e.op == '-') return Sum;
      if (e.op == '^') return Power;
      return Product;
    default: return Primary;
  }
}

void emit(std::ostream& os, const Expr& e);

void emit_at_least(std::ostream& os, const Expr& e, int min) {
  if (precedence(e) < min) {
    os << '(';
    emit(os, e);
    os << ')';
  } else {
    emit(os, e);
  }
}

void emit_list(std::ostream& os, const std::vector<ExprPtr>& items) {
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) os << ", ";
    emit(os, *items[i]);
  }
}

void emit(std::ostream& os, const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Number:
    case Expr::Kind::Ident: os << e.text; break;
    case Expr::Kind::Deriv: os << "d/d" << e.text; break;
    case Expr::Kind::Neg:
      os << '-';
      emit_at_least(os, *e.children[0], Unary);
      break;
    case Expr::Kind::Binary: {
      const auto& l = *e.children[0];
      const auto& r = *e.children[1];
      if (e.op == '+' || e.op == '-') {
        emit_at_least(os, l, Sum);
        os << ' ' << e.op << ' ';
        emit_at_least(os, r, Product);
      } else if (e.op == '^') {
        emit_at_least(os, l, Primary);
        os << '^';
        emit_at_least(os, r, Unary);
      } else {
        emit_at_least(os, l, Product);
        os << e.op;
        emit_at_least(os, r, Unary);
      }
      break;
    }
    case Expr::Kind::Call:
      os << e.text << '(';
      emit_list(os, e.children);
      os << ')';
      break;
    case Expr::Kind::List:
      os << '[';
      emit_list(os, e.children);
      os << ']';
      break;
    case Expr::Kind::Tuple:
      os << '(';
      emit_list(os, e.children);
      os << ')';
      break;
  }
}

std::string vars(const std::vector<VarDecl>& v, bool stars) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += v[i].name;
    if (stars && v[i].invertible) s += '*';
  }
  return s;
}

std::string bindings(const std::vector<Binding>& b, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (i) s += ", ";
    s += b[i].name + sep + print(*b[i].value);
  }
  return s;
}

struct StatementPrinter {
  std::ostream& os;

  void operator()(const ChartStmt& c) const {
    os << "chart {\n";
    if (!c.vars.empty()) os << "  vars " << vars(c.vars, true) << ";\n";
    if (!c.inverts.empty()) os << "  invert " << vars(c.inverts, false) << ";\n";
    for (const auto& r : c.rels) {
      os << "  rel " << print(*r.poly);
      if (r.solve) os << " solve " << *r.solve;
      os << ";\n";
    }
    os << "}\n";
  }
  void operator()(const DefStmt& d) const {
    static const char* const words[] = {"let", "field", "form", "volume"};
    os << words[static_cast<int>(d.kind)] << ' ' << d.name << " = " << print(*d.value) << ";\n";
  }
  void operator()(const ActionStmt& a) const {
    os << "action " << a.name << ": " << bindings(a.images, " -> ") << " order " << a.order << ";\n";
  }
  void operator()(const PointStmt& p) const { os << "point " << p.name << ": " << bindings(p.values, " = ") << ";\n"; }
  void operator()(const GroupStmt& g) const {
    os << "group " << g.name << " {\n";
    if (!g.size.empty()) os << "  size " << g.size << ";\n";
    if (!g.basis.empty()) {
      os << "  basis ";
      emit_list(os, g.basis);
      os << ";\n";
    }
    for (const auto& e : g.elements) os << "  element " << e.name << " = " << print(*e.value) << ";\n";
    os << "}\n";
  }
  void operator()(const CheckStmt& c) const {
    os << "check " << c.kind << '(';
    emit_list(os, c.args);
    os << ')';
    if (c.expect) os << " expect " << *c.expect;
    os << ";\n";
  }
};

}  // namespace

std::string print(const Expr& e) {
  std::ostringstream os;
  emit(os, e);
  return os.str();
}

std::string print(const Document& doc) {
  std::ostringstream os;
  for (const auto& s : doc.statements) std::visit(StatementPrinter{os}, s);
  return os.str();
}

}  // namespace volform::dsl
