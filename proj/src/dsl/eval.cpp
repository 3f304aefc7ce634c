#include "volform/dsl/eval.hpp"

namespace volform::dsl {

Value Value::of(LaurentPoly p) {
  Value v;
  v.sort = Sort::Scalar;
  v.scalar = std::move(p);
  return v;
}

Value Value::of(const VectorField& f) {
  Value v;
  v.sort = Sort::Field;
  v.field = f.coefficients();
  return v;
}

Value Value::of(DiffForm a) {
  Value v;
  v.sort = Sort::Form;
  v.form = std::move(a);
  return v;
}

std::string sort_name(Value::Sort s) {
  switch (s) {
    case Value::Sort::Scalar: return "scalar";
    case Value::Sort::Field: return "field";
    case Value::Sort::Form: return "form";
    case Value::Sort::Tuple: return "tuple";
    case Value::Sort::List: return "list";
  }
  return "value";
}

namespace {

class Evaluator {
 public:
  explicit Evaluator(const Scenario& s) : s_(s), chart_(s.chart) {}

  Value eval(const Expr& e) {
    try {
      return dispatch(e);
    } catch (const SourceError&) {
      throw;
    } catch (const Error& err) {
      throw SemanticError(e.pos, err.what());
    }
  }

  VectorField to_field(const Value& v, const Expr& at) {
    expect(v, Value::Sort::Field, at);
    try {
      return VectorField::from_ambient(chart_, v.field);
    } catch (const NotTangent& err) {
      throw SemanticError(at.pos, std::string("field is not tangent to the chart: ") + err.what());
    }
  }

 private:
  static void expect(const Value& v, Value::Sort s, const Expr& at) {
    if (v.sort != s) throw SemanticError(at.pos, "expected a " + sort_name(s) + ", got a " + sort_name(v.sort));
  }

  LaurentPoly constant(const Rational& c) const { return chart_->constant(c); }

  Value lookup(const Expr& e) {
    const auto& name = e.text;
    for (const auto& [n, v] : s_.scalars) {
      if (n == name) return Value::of(v);
    }
    for (const auto& [n, v] : s_.fields) {
      if (n == name) return Value::of(v);
    }
    for (const auto& [n, v] : s_.forms) {
      if (n == name) return Value::of(v);
    }
    if (s_.volume && name == s_.volume_name) return Value::of(s_.volume->form());
    const auto& ring = chart_->ring();
    if (ring->index_of(name)) return Value::of(chart_->variable(name));
    if (name.size() > 1 && name[0] == 'd' && ring->index_of(std::string_view(name).substr(1))) {
      return Value::of(DiffForm::differential(chart_, std::string_view(name).substr(1)));
    }
    throw SemanticError(e.pos, "unknown identifier '" + name + "'");
  }

  Value dispatch(const Expr& e) {
    switch (e.kind) {
      case Expr::Kind::Number: return Value::of(constant(Rational::parse(e.text)));
      case Expr::Kind::Ident: return lookup(e);
      case Expr::Kind::Deriv: {
        auto idx = chart_->ring()->index_of(e.text);
        if (!idx) throw SemanticError(e.pos, "unknown coordinate '" + e.text + "' in d/d" + e.text);
        Value v;
        v.sort = Value::Sort::Field;
        v.field.assign(chart_->ambient_dimension(), LaurentPoly(chart_->ring()));
        v.field[*idx] = constant(1);
        return v;
      }
      case Expr::Kind::Neg: return negate(eval(*e.children[0]), e);
      case Expr::Kind::Binary: return binary(e);
      case Expr::Kind::Call: return call(e);
      case Expr::Kind::List: {
        Value v;
        v.sort = Value::Sort::List;
        for (const auto& c : e.children) v.items.push_back(eval(*c));
        if (v.items.size() == 2 && v.items[0].sort == Value::Sort::Field && v.items[1].sort == Value::Sort::Field) {
          return Value::of(lie_bracket(to_field(v.items[0], *e.children[0]), to_field(v.items[1], *e.children[1])));
        }
        return v;
      }
      case Expr::Kind::Tuple: {
        Value v;
        v.sort = Value::Sort::Tuple;
        for (const auto& c : e.children) v.items.push_back(eval(*c));
        return v;
      }
    }
    throw SemanticError(e.pos, "unsupported expression");
  }

  Value negate(Value v, const Expr& e) {
    switch (v.sort) {
      case Value::Sort::Scalar: return Value::of(-*v.scalar);
      case Value::Sort::Field:
        for (auto& c : v.field) c = -c;
        return v;
      case Value::Sort::Form: return Value::of(-*v.form);
      default: throw SemanticError(e.pos, "cannot negate a " + sort_name(v.sort));
    }
  }

  Value scale(const LaurentPoly& f, Value v) {
    switch (v.sort) {
      case Value::Sort::Scalar: return Value::of(f * *v.scalar);
      case Value::Sort::Field:
        for (auto& c : v.field) c = f * c;
        return v;
      default: return Value::of(f * *v.form);
    }
  }

  LaurentPoly unit_inverse(const LaurentPoly& p, const Expr& at) {
    LaurentPoly n = chart_->normal_form(p);
    if (!n.is_unit()) throw SemanticError(at.pos, "division by a non-unit " + n.to_string());
    return n.unit_inverse();
  }

  Value binary(const Expr& e) {
    const Expr& le = *e.children[0];
    const Expr& re = *e.children[1];
    Value l = eval(le);
    Value r = eval(re);
    auto mismatch = [&]() -> SemanticError {
      return SemanticError(e.pos, std::string("operator '") + e.op + "' does not apply to a " + sort_name(l.sort) +
                                      " and a " + sort_name(r.sort));
    };
    switch (e.op) {
      case '+':
      case '-': {
        if (l.sort != r.sort) throw mismatch();
        if (e.op == '-') r = negate(std::move(r), e);
        switch (l.sort) {
          case Value::Sort::Scalar: return Value::of(*l.scalar + *r.scalar);
          case Value::Sort::Field:
            for (std::size_t i = 0; i < l.field.size(); ++i) l.field[i] += r.field[i];
            return l;
          case Value::Sort::Form: return Value::of(*l.form + *r.form);
          default: throw mismatch();
        }
      }
      case '*': {
        if (l.sort == Value::Sort::Scalar && (r.sort == Value::Sort::Scalar || r.sort == Value::Sort::Field ||
                                              r.sort == Value::Sort::Form)) {
          return scale(*l.scalar, std::move(r));
        }
        if (r.sort == Value::Sort::Scalar && (l.sort == Value::Sort::Field || l.sort == Value::Sort::Form)) {
          return scale(*r.scalar, std::move(l));
        }
        throw mismatch();
      }
      case '/': {
        if (r.sort != Value::Sort::Scalar ||
            !(l.sort == Value::Sort::Scalar || l.sort == Value::Sort::Field || l.sort == Value::Sort::Form)) {
          throw mismatch();
        }
        return scale(unit_inverse(*r.scalar, re), std::move(l));
      }
      case '^': {
        if (l.sort == Value::Sort::Form && r.sort == Value::Sort::Form) return Value::of(wedge(*l.form, *r.form));
        if (l.sort == Value::Sort::Scalar && r.sort == Value::Sort::Scalar) {
          auto k = r.scalar->constant_value();
          if (!k || !k->is_integer()) throw SemanticError(re.pos, "exponent must be an integer constant");
          const long n = k->numerator().get_si();
          LaurentPoly base = *l.scalar;
          if (n < 0) base = chart_->normal_form(base);
          if (n < 0 && !base.is_unit()) throw SemanticError(e.pos, "negative power of a non-unit " + base.to_string());
          return Value::of(base.pow(static_cast<int>(n)));
        }
        throw mismatch();
      }
    }
    throw SemanticError(e.pos, std::string("unknown operator '") + e.op + "'");
  }

  void arity(const Expr& e, std::size_t lo, std::size_t hi) {
    if (e.children.size() < lo || e.children.size() > hi) {
      throw SemanticError(e.pos, e.text + "() takes " + std::to_string(lo) +
                                     (lo == hi ? "" : " to " + std::to_string(hi)) + " arguments");
    }
  }

  Value call(const Expr& e) {
    const auto& name = e.text;
    if (name == "d") {
      arity(e, 1, 1);
      Value a = eval(*e.children[0]);
      if (a.sort == Value::Sort::Scalar) return Value::of(exterior_derivative(DiffForm::scalar(chart_, *a.scalar)));
      expect(a, Value::Sort::Form, *e.children[0]);
      return Value::of(exterior_derivative(*a.form));
    }
    if (name == "iota") {
      arity(e, 2, 2);
      VectorField f = to_field(eval(*e.children[0]), *e.children[0]);
      Value a = eval(*e.children[1]);
      expect(a, Value::Sort::Form, *e.children[1]);
      return Value::of(interior_product(f, *a.form));
    }
    if (name == "lie") {
      arity(e, 2, 2);
      VectorField f = to_field(eval(*e.children[0]), *e.children[0]);
      Value a = eval(*e.children[1]);
      switch (a.sort) {
        case Value::Sort::Scalar: return Value::of(f.apply(*a.scalar));
        case Value::Sort::Field: return Value::of(lie_bracket(f, to_field(a, *e.children[1])));
        case Value::Sort::Form: return Value::of(lie_derivative(f, *a.form));
        default: throw SemanticError(e.children[1]->pos, "lie() does not apply to a " + sort_name(a.sort));
      }
    }
    if (name == "div") {
      arity(e, 1, 2);
      VectorField f = to_field(eval(*e.children[0]), *e.children[0]);
      if (e.children.size() == 2) {
        Value w = eval(*e.children[1]);
        expect(w, Value::Sort::Form, *e.children[1]);
        return Value::of(divergence(f, VolumeForm::make(*w.form)));
      }
      if (!s_.volume) throw SemanticError(e.pos, "div() needs a volume form");
      return Value::of(divergence(f, *s_.volume));
    }
    throw SemanticError(e.pos, "unknown builtin '" + name + "'");
  }

  const Scenario& s_;
  ChartPtr chart_;
};

}  // namespace

Value evaluate(const Expr& e, const Scenario& scope) { return Evaluator(scope).eval(e); }

LaurentPoly eval_scalar(const Expr& e, const Scenario& scope) {
  Value v = evaluate(e, scope);
  if (v.sort != Value::Sort::Scalar) throw SemanticError(e.pos, "expected a scalar, got a " + sort_name(v.sort));
  return scope.chart->normal_form(*v.scalar);
}

VectorField eval_field(const Expr& e, const Scenario& scope) {
  Evaluator ev(scope);
  return ev.to_field(ev.eval(e), e);
}

DiffForm eval_form(const Expr& e, const Scenario& scope) {
  Value v = evaluate(e, scope);
  if (v.sort != Value::Sort::Form) throw SemanticError(e.pos, "expected a form, got a " + sort_name(v.sort));
  return *v.form;
}

Rational eval_constant(const Expr& e, const Scenario& scope) {
  auto c = eval_scalar(e, scope).constant_value();
  if (!c) throw SemanticError(e.pos, "expected a constant");
  return *c;
}

Matrix eval_matrix(const Expr& e, const Scenario& scope) {
  if (e.kind != Expr::Kind::List) throw SemanticError(e.pos, "expected a matrix [[...], ...]");
  std::vector<std::vector<Rational>> rows;
  for (const auto& row : e.children) {
    if (row->kind != Expr::Kind::List) throw SemanticError(row->pos, "expected a matrix row [...]");
    std::vector<Rational> r;
    for (const auto& c : row->children) r.push_back(eval_constant(*c, scope));
    if (!rows.empty() && r.size() != rows.front().size()) throw SemanticError(row->pos, "matrix rows differ in length");
    rows.push_back(std::move(r));
  }
  return Matrix::from_rows(rows);
}

}  // namespace volform::dsl
