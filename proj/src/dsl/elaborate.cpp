#include "volform/dsl/elaborate.hpp"

#include <algorithm>
#include <cstdint>
#include <set>

#include "volform/dsl/eval.hpp"
#include "volform/dsl/printer.hpp"

namespace volform::dsl {

const std::vector<CheckKind>& check_kinds() {
  static const std::vector<CheckKind> kinds{
      {"tangent", 1, 1, "tangent(F)", "F is tangent to the chart"},
      {"divfree", 1, 2, "divfree(F[, w])", "divergence of F vanishes"},
      {"divergence", 2, 3, "divergence(F, g[, w])", "divergence of F equals g"},
      {"identity1", 2, 3, "identity1(F, G[, w])", "i_[F,G] w = d i_F i_G w for divergence-free F, G"},
      {"bracket", 3, 3, "bracket(F, G, H)", "[F, G] = H"},
      {"equal", 2, 2, "equal(A, B)", "A = B for scalars, fields or forms"},
      {"equal_pm", 2, 2, "equal_pm(A, B)", "A = B or A = -B; reports the sign"},
      {"kernel", 2, 2, "kernel(F, g)", "degree-bounded kernel of F is spanned by powers of g"},
      {"kernel_contains", 2, 2, "kernel_contains(F, g)", "F(g) = 0"},
      {"semicompat", 2, 3, "semicompat(F, G[, D])", "bounded semi-compatibility; UNKNOWN when inconclusive"},
      {"condition_a", 1, SIZE_MAX, "condition_a((F, G, I), ...)", "wedges I F ^ G span the fiber at sampled points"},
      {"potential", 2, 3, "potential(f, F[, w])", "d(c f) = i_F w for c = +1 or -1"},
      {"bracket_potential", 3, 4, "bracket_potential(F, G, w[, g])", "i_F i_G w, optionally equal to +-g"},
      {"exact", 2, 2, "exact(tau, alpha)", "d tau = alpha"},
      {"closed", 1, 1, "closed(alpha)", "d alpha = 0"},
      {"invariant", 2, 2, "invariant(X, sigma)", "X is invariant under the action"},
      {"character", 2, 3, "character(X, sigma[, c])", "sigma acts on X by a constant, optionally c"},
      {"lnd", 1, 1, "lnd(F)", "F is locally nilpotent within the bound"},
      {"formula3", 3, 3, "formula3(F, f, p)", "tangent map of the flow of fF at p is I + F(p) df(p)"},
      {"formula4", 1, 1, "formula4(f)", "seven-family decomposition on the surface, both routes agree"},
      {"submodular", 3, 3, "submodular(G, h, value)", "determinant of Ad h on the Lie algebra of G"},
      {"unimodular", 1, 1, "unimodular(G)", "sub-modular function is 1 at every element of G"},
      {"character_property", 1, 1, "character_property(G)", "sub-modular function is multiplicative on G"},
  };
  return kinds;
}

const CheckKind* find_check_kind(std::string_view name) {
  for (const auto& k : check_kinds()) {
    if (k.name == name) return &k;
  }
  return nullptr;
}

namespace {

class Elaborator {
 public:
  explicit Elaborator(std::string name) { s_.name = std::move(name); }

  Scenario run(const Document& doc) {
    for (const auto& st : doc.statements) std::visit([this](const auto& x) { handle(x); }, st);
    if (!s_.chart) throw SemanticError(Pos{}, "document has no chart block");
    return std::move(s_);
  }

 private:
  void need_chart(Pos p) const {
    if (!s_.chart) throw SemanticError(p, "the chart block must come first");
  }

  void claim(Pos p, const std::string& name) {
    if (s_.chart && s_.chart->ring()->index_of(name)) {
      throw SemanticError(p, "'" + name + "' is already a coordinate");
    }
    if (!names_.insert(name).second) throw SemanticError(p, "'" + name + "' is already defined");
  }

  void handle(const ChartStmt& c) {
    if (s_.chart) throw SemanticError(c.pos, "only one chart block is allowed");
    if (c.vars.empty()) throw SemanticError(c.pos, "chart declares no variables");
    std::vector<std::string> names;
    std::vector<bool> inv;
    for (const auto& v : c.vars) {
      if (std::find(names.begin(), names.end(), v.name) != names.end()) {
        throw SemanticError(v.pos, "variable '" + v.name + "' declared twice");
      }
      names.push_back(v.name);
      inv.push_back(v.invertible);
    }
    for (const auto& v : c.inverts) {
      auto it = std::find(names.begin(), names.end(), v.name);
      if (it == names.end()) throw SemanticError(v.pos, "unknown variable '" + v.name + "'");
      inv[static_cast<std::size_t>(it - names.begin())] = true;
    }
    auto ring = Ring::make(names, inv);
    Scenario bare;
    bare.chart = Chart::make(ring, {});
    std::vector<std::pair<LaurentPoly, std::string>> rels;
    for (const auto& r : c.rels) {
      if (!r.solve) throw SemanticError(r.pos, "triangular presentation required: rel needs a solve clause");
      if (!ring->index_of(*r.solve)) throw SemanticError(r.pos, "unknown variable '" + *r.solve + "'");
      Value v = evaluate(*r.poly, bare);
      if (v.sort != Value::Sort::Scalar) throw SemanticError(r.pos, "relation must be a scalar");
      rels.emplace_back(*v.scalar, *r.solve);
    }
    try {
      s_.chart = Chart::make(ring, std::move(rels));
    } catch (const Error& e) {
      throw SemanticError(c.rels.empty() ? c.pos : c.rels.front().pos,
                          std::string("triangular presentation required: ") + e.what());
    }
  }

  void handle(const DefStmt& d) {
    need_chart(d.pos);
    claim(d.pos, d.name);
    switch (d.kind) {
      case DefStmt::Kind::Let: s_.scalars.emplace_back(d.name, eval_scalar(*d.value, s_)); break;
      case DefStmt::Kind::Field: s_.fields.emplace_back(d.name, eval_field(*d.value, s_)); break;
      case DefStmt::Kind::Form: s_.forms.emplace_back(d.name, eval_form(*d.value, s_)); break;
      case DefStmt::Kind::Volume: {
        if (s_.volume) throw SemanticError(d.pos, "only one volume form is allowed");
        DiffForm top = eval_form(*d.value, s_);
        try {
          s_.volume = VolumeForm::make(top);
        } catch (const Error& e) {
          throw SemanticError(d.value->pos, e.what());
        }
        s_.volume_name = d.name;
        break;
      }
    }
  }

  void handle(const ActionStmt& a) {
    need_chart(a.pos);
    claim(a.pos, a.name);
    Bindings images;
    for (const auto& b : a.images) {
      if (!s_.chart->ring()->index_of(b.name)) throw SemanticError(b.pos, "unknown variable '" + b.name + "'");
      if (!images.emplace(b.name, eval_scalar(*b.value, s_)).second) {
        throw SemanticError(b.pos, "coordinate '" + b.name + "' mapped twice");
      }
    }
    try {
      s_.actions.push_back(SubstitutionAction::make(a.name, s_.chart, std::move(images), std::stoi(a.order)));
    } catch (const Error& e) {
      throw SemanticError(a.pos, e.what());
    }
  }

  void handle(const PointStmt& p) {
    need_chart(p.pos);
    claim(p.pos, p.name);
    Assignment values;
    for (const auto& b : p.values) {
      if (!s_.chart->ring()->index_of(b.name)) throw SemanticError(b.pos, "unknown variable '" + b.name + "'");
      values[b.name] = eval_constant(*b.value, s_);
    }
    try {
      if (values.size() == s_.chart->ambient_dimension()) {
        std::vector<Rational> v;
        for (const auto& n : s_.chart->ring()->names()) v.push_back(values.at(n));
        s_.points.emplace_back(p.name, Point(s_.chart, std::move(v)));
      } else {
        Assignment free;
        for (auto i : s_.chart->free_coordinates()) {
          const auto& n = s_.chart->name(i);
          auto it = values.find(n);
          if (it == values.end()) throw SemanticError(p.pos, "point leaves coordinate '" + n + "' unset");
          free.emplace(n, it->second);
        }
        Point pt = complete_point(s_.chart, free);
        for (const auto& [n, v] : values) {
          if (pt.at(n) != v) throw SemanticError(p.pos, "point is not on the chart");
        }
        s_.points.emplace_back(p.name, pt);
      }
    } catch (const SourceError&) {
      throw;
    } catch (const Error& e) {
      throw SemanticError(p.pos, e.what());
    }
  }

  void handle(const GroupStmt& g) {
    need_chart(g.pos);
    claim(g.pos, g.name);
    if (g.size.empty()) throw SemanticError(g.pos, "group needs a size");
    const auto n = static_cast<std::size_t>(std::stoul(g.size));
    std::vector<Matrix> basis;
    for (const auto& b : g.basis) basis.push_back(eval_matrix(*b, s_));
    std::vector<GroupPresentation::Element> elements;
    for (const auto& e : g.elements) {
      for (const auto& [other, m] : elements) {
        if (other == e.name) throw SemanticError(e.pos, "element '" + e.name + "' defined twice");
      }
      elements.emplace_back(e.name, eval_matrix(*e.value, s_));
    }
    try {
      s_.groups.emplace_back(g.name, GroupPresentation::make(n, std::move(basis), std::move(elements)));
    } catch (const Error& e) {
      throw SemanticError(g.pos, e.what());
    }
  }

  void handle(const CheckStmt& c) {
    need_chart(c.pos);
    const CheckKind* kind = find_check_kind(c.kind);
    if (!kind) throw SemanticError(c.pos, "unknown check kind '" + c.kind + "'");
    if (c.args.size() < kind->min_args || c.args.size() > kind->max_args) {
      throw SemanticError(c.pos, "wrong number of arguments, expected " + kind->signature);
    }
    std::vector<std::string> args;
    for (const auto& a : c.args) {
      resolve_names(*a);
      args.push_back(print(*a));
    }
    s_.add_check(c.kind, std::move(args), c.expect);
  }

  bool known_name(const std::string& n) const {
    if (names_.count(n)) return true;
    const auto& ring = s_.chart->ring();
    if (ring->index_of(n)) return true;
    if (n.size() > 1 && n[0] == 'd' && ring->index_of(std::string_view(n).substr(1))) return true;
    for (const auto& [gname, g] : s_.groups) {
      for (const auto& [ename, m] : g.elements()) {
        if (ename == n) return true;
      }
    }
    return false;
  }

  void resolve_names(const Expr& e) const {
    if (e.kind == Expr::Kind::Ident && !known_name(e.text)) {
      throw SemanticError(e.pos, "unknown identifier '" + e.text + "'");
    }
    if (e.kind == Expr::Kind::Deriv && !s_.chart->ring()->index_of(e.text)) {
      throw SemanticError(e.pos, "unknown coordinate '" + e.text + "' in d/d" + e.text);
    }
    for (const auto& c : e.children) resolve_names(*c);
  }

  Scenario s_;
  std::set<std::string> names_;
};

template <class T>
bool same_named(const Named<T>& a, const Named<T>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].first != b[i].first || !(a[i].second == b[i].second)) return false;
  }
  return true;
}

}  // namespace

Scenario elaborate(const Document& doc, std::string name) { return Elaborator(std::move(name)).run(doc); }

bool same_scenario(const Scenario& a, const Scenario& b) {
  const auto& ca = *a.chart;
  const auto& cb = *b.chart;
  if (!(*ca.ring() == *cb.ring()) || ca.relations().size() != cb.relations().size()) return false;
  for (std::size_t i = 0; i < ca.relations().size(); ++i) {
    const auto& ra = ca.relations()[i];
    const auto& rb = cb.relations()[i];
    if (ra.solvable != rb.solvable || !(rebase(ra.poly, cb.ring()) == rb.poly)) return false;
  }
  // Objects are compared through b's chart so that equal rings suffice.
  Scenario a2 = a;
  auto move_poly = [&](const LaurentPoly& p) { return rebase(p, cb.ring()); };
  for (auto& [n, v] : a2.scalars) v = move_poly(v);
  if (a.volume_name != b.volume_name || a.volume.has_value() != b.volume.has_value()) return false;
  auto same_form = [&](const DiffForm& x, const DiffForm& y) {
    if (x.degree() != y.degree() || x.coefficients().size() != y.coefficients().size()) return false;
    for (const auto& [set, c] : x.coefficients()) {
      if (!(move_poly(c) == y.coefficient(set))) return false;
    }
    return true;
  };
  auto same_field = [&](const VectorField& x, const VectorField& y) {
    for (std::size_t i = 0; i < x.coefficients().size(); ++i) {
      if (!(move_poly(x.coefficient(i)) == y.coefficient(i))) return false;
    }
    return true;
  };
  if (a.volume && !same_form(a.volume->form(), b.volume->form())) return false;
  if (!same_named(a2.scalars, b.scalars)) return false;
  if (a.fields.size() != b.fields.size() || a.forms.size() != b.forms.size()) return false;
  for (std::size_t i = 0; i < a.fields.size(); ++i) {
    if (a.fields[i].first != b.fields[i].first || !same_field(a.fields[i].second, b.fields[i].second)) return false;
  }
  for (std::size_t i = 0; i < a.forms.size(); ++i) {
    if (a.forms[i].first != b.forms[i].first || !same_form(a.forms[i].second, b.forms[i].second)) return false;
  }
  if (a.actions.size() != b.actions.size() || a.points.size() != b.points.size()) return false;
  for (std::size_t i = 0; i < a.actions.size(); ++i) {
    const auto& x = a.actions[i];
    const auto& y = b.actions[i];
    if (x.name() != y.name() || x.order() != y.order()) return false;
    for (std::size_t k = 0; k < ca.ambient_dimension(); ++k) {
      if (!(move_poly(x.image(k)) == y.image(k))) return false;
    }
  }
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    if (a.points[i].first != b.points[i].first || a.points[i].second.values() != b.points[i].second.values()) {
      return false;
    }
  }
  if (a.groups.size() != b.groups.size()) return false;
  for (std::size_t i = 0; i < a.groups.size(); ++i) {
    const auto& ga = a.groups[i].second;
    const auto& gb = b.groups[i].second;
    if (a.groups[i].first != b.groups[i].first || ga.size() != gb.size() || ga.lie_basis() != gb.lie_basis()) {
      return false;
    }
    if (ga.elements().size() != gb.elements().size()) return false;
    for (std::size_t k = 0; k < ga.elements().size(); ++k) {
      if (ga.elements()[k] != gb.elements()[k]) return false;
    }
  }
  return a.checks == b.checks;
}

}  // namespace volform::dsl
