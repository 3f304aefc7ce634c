#include "volform/scenarios.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "volform/avdp.hpp"
#include "volform/error.hpp"

namespace volform {

std::string CheckDirective::label() const {
  std::string s = kind + "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) s += ", ";
    s += args[i];
  }
  return s + ")";
}

namespace {

template <class T>
const T* find_named(const Named<T>& items, std::string_view name) {
  for (const auto& [n, v] : items) {
    if (n == name) return &v;
  }
  return nullptr;
}

LaurentPoly var(const ChartPtr& c, std::string_view name) { return c->variable(name); }
LaurentPoly num(const ChartPtr& c, long v) { return c->constant(Rational(v)); }

std::string rstr(const Rational& r) { return r.to_string(); }

}  // namespace

const VectorField& Scenario::field(std::string_view n) const {
  if (auto* f = find_named(fields, n)) return *f;
  throw Error("unknown field '" + std::string(n) + "'");
}

const DiffForm& Scenario::form(std::string_view n) const {
  if (auto* f = find_named(forms, n)) return *f;
  if (volume && n == volume_name) return volume->form();
  throw Error("unknown form '" + std::string(n) + "'");
}

const SubstitutionAction& Scenario::action(std::string_view n) const {
  for (const auto& a : actions) {
    if (a.name() == n) return a;
  }
  throw Error("unknown action '" + std::string(n) + "'");
}

const VolumeForm& Scenario::volume_form() const {
  if (!volume) throw Error("scenario '" + name + "' has no volume form");
  return *volume;
}

void Scenario::add_check(std::string kind, std::vector<std::string> args, std::optional<std::string> expect) {
  checks.push_back({std::move(kind), std::move(args), std::move(expect)});
}

ExactnessField exactness_field(const VectorField& xi, const VectorField& eta, const LaurentPoly& f,
                               const VolumeForm& w) {
  const auto& chart = w.chart();
  if (xi.chart() != chart || eta.chart() != chart) throw VariableMismatch("fields and volume form on different charts");
  if (!lie_bracket(xi, eta).is_zero()) throw PreconditionError("fields do not commute");
  const LaurentPoly g = chart->normal_form(f);
  ExactnessField out{xi.apply(g) * eta, interior_product(xi, interior_product(g * eta, w.form()))};
  if (!(exterior_derivative(out.primitive) == theta(out.field, w))) {
    throw PreconditionError("i_xi i_{f eta} w is not a primitive of the exactness field");
  }
  return out;
}

// ---------------------------------------------------------------- torus

Scenario torus(int n) {
  if (n < 1) throw PreconditionError("torus dimension must be at least 1");
  std::vector<std::string> names;
  for (int i = 1; i <= n; ++i) names.push_back("z" + std::to_string(i));
  auto ring = Ring::make(names, std::vector<bool>(names.size(), true));
  auto chart = Chart::make(ring, {});

  Scenario s;
  s.name = "torus:" + std::to_string(n);
  s.chart = chart;
  LaurentPoly density = num(chart, 1);
  for (const auto& z : names) density *= var(chart, z).pow(-1);
  s.volume = VolumeForm::make(DiffForm::basis(chart, names, density));

  for (int i = 0; i < n; ++i) {
    std::vector<LaurentPoly> c(names.size(), LaurentPoly(ring));
    c[i] = var(chart, names[i]);
    s.fields.emplace_back("nu" + std::to_string(i + 1), VectorField::from_ambient(chart, c));
  }
  for (int i = 0; i < n; ++i) {
    std::vector<std::string> rest;
    LaurentPoly d = num(chart, 1);
    for (int k = 0; k < n; ++k) {
      if (k == i) continue;
      rest.push_back(names[k]);
      d *= var(chart, names[k]).pow(-1);
    }
    s.forms.emplace_back("omit" + std::to_string(i + 1), DiffForm::basis(chart, rest, d));
  }
  Bindings neg;
  for (const auto& z : names) neg.emplace(z, -var(chart, z));
  s.actions.push_back(SubstitutionAction::make("neg", chart, neg, 2));

  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      if (i == j) continue;
      const auto zj = names[j - 1];
      auto ex = exactness_field(s.field("nu" + std::to_string(j)), s.field("nu" + std::to_string(i)),
                                var(chart, zj), *s.volume);
      const auto tag = std::to_string(i) + "_" + std::to_string(j);
      s.fields.emplace_back("nu" + tag, ex.field);
      s.forms.emplace_back("tau" + tag, ex.primitive);
    }
  }

  for (int i = 1; i <= n; ++i) {
    const auto nu = "nu" + std::to_string(i);
    s.add_check("divfree", {nu});
    s.add_check("invariant", {nu, "neg"});
    s.add_check("equal_pm", {"iota(" + nu + ", w)", "omit" + std::to_string(i)});
  }
  s.add_check("invariant", {"w", "neg"});
  std::vector<std::string> pairs;
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      const auto a = std::to_string(i) + "_" + std::to_string(j);
      const auto b = std::to_string(j) + "_" + std::to_string(i);
      s.add_check("exact", {"tau" + a, "iota(nu" + a + ", w)"});
      s.add_check("exact", {"tau" + b, "iota(nu" + b + ", w)"});
      pairs.push_back("(nu" + a + ", nu" + b + ", 1)");
    }
  }
  if (!pairs.empty()) s.add_check("condition_a", pairs);
  return s;
}

// ---------------------------------------------------------------- SL2

Scenario sl2() {
  auto ring = Ring::make({"a1", "a2", "b1", "b2"}, {true, false, false, false});
  const auto a1 = LaurentPoly::variable(ring, "a1"), a2 = LaurentPoly::variable(ring, "a2");
  const auto b1 = LaurentPoly::variable(ring, "b1"), b2 = LaurentPoly::variable(ring, "b2");
  auto chart = Chart::make(ring, {{a1 * b2 - a2 * b1 - LaurentPoly::constant(ring, 1), "b2"}});
  const LaurentPoly zero(ring);

  Scenario s;
  s.name = "sl2";
  s.chart = chart;
  s.volume = VolumeForm::make(DiffForm::basis(chart, {"a1", "a2", "b1"}, a1.pow(-1)));
  auto xi = VectorField::from_ambient(chart, {b1, b2, zero, zero});
  auto eta = VectorField::from_ambient(chart, {zero, zero, a1, a2});
  s.fields.emplace_back("xi", xi);
  s.fields.emplace_back("eta", eta);
  s.fields.emplace_back("h", VectorField::from_ambient(chart, {-a1, -a2, b1, b2}));
  s.points.emplace_back("p0", Point(chart, {Rational(1), Rational(1), Rational(0), Rational(1)}));

  auto m = [](std::initializer_list<std::initializer_list<long>> rows) {
    std::vector<std::vector<Rational>> r;
    for (auto row : rows) {
      std::vector<Rational> v;
      for (long x : row) v.emplace_back(x);
      r.push_back(std::move(v));
    }
    return Matrix::from_rows(r);
  };
  const Matrix e = m({{0, 1}, {0, 0}}), f = m({{0, 0}, {1, 0}}), hh = m({{1, 0}, {0, -1}});
  const Matrix a0 = m({{0, -1}, {1, 0}});
  Matrix d = Matrix::from_rows({{Rational(2), Rational(0)}, {Rational(0), Rational(1, 2)}});
  const Matrix u1 = m({{1, 1}, {0, 1}}), l1 = m({{1, 0}, {1, 1}}), g1 = m({{2, 1}, {1, 1}});
  s.groups.emplace_back("SL2", GroupPresentation::make(2, {e, f, hh},
                                                       {{"A0", a0}, {"D", d}, {"U1", u1}, {"L1", l1}, {"G1", g1}}));
  s.groups.emplace_back("T", GroupPresentation::make(2, {hh}, {{"A0", a0}, {"D", d}}));
  s.groups.emplace_back("U", GroupPresentation::make(2, {e}, {{"D", d}, {"U1", u1}}));

  s.add_check("tangent", {"xi"});
  s.add_check("tangent", {"eta"});
  s.add_check("lnd", {"xi"});
  s.add_check("lnd", {"eta"});
  s.add_check("divfree", {"xi"});
  s.add_check("divfree", {"eta"});
  s.add_check("identity1", {"xi", "eta", "w"});
  s.add_check("bracket", {"xi", "eta", "h"});
  s.add_check("kernel_contains", {"xi", "b1"});
  s.add_check("semicompat", {"xi", "eta", "2"}, "FULL_RING");
  s.add_check("formula3", {"xi", "b1", "p0"});
  s.add_check("submodular", {"T", "A0", "-1"});
  s.add_check("submodular", {"U", "D", "4"});
  s.add_check("unimodular", {"SL2"});
  s.add_check("character_property", {"SL2"});
  s.add_check("character_property", {"T"});
  return s;
}

// ---------------------------------------------------------------- surfaces

Scenario surface_S(const LaurentPoly& p, const LaurentPoly& q) {
  auto ring = Ring::make({"x", "y", "z"}, {true, true, false});
  const LaurentPoly x = LaurentPoly::variable(ring, "x"), y = LaurentPoly::variable(ring, "y"),
                    z = LaurentPoly::variable(ring, "z");
  const LaurentPoly pp = rebase(p, ring), qq = rebase(q, ring);
  if (pp.involves(1) || pp.involves(2) || pp.has_negative_exponents()) {
    throw PreconditionError("p must be a polynomial in x");
  }
  if (qq.involves(0) || qq.involves(2) || qq.has_negative_exponents()) {
    throw PreconditionError("q must be a polynomial in y");
  }
  if (!pp.coefficient({0, 0, 0}).is_zero() || !qq.coefficient({0, 0, 0}).is_zero()) {
    throw PreconditionError("p(0) and q(0) must vanish");
  }
  const LaurentPoly one = LaurentPoly::constant(ring, 1);
  auto chart = Chart::make(ring, {{pp + qq + x * y * z - one, "z"}});
  const LaurentPoly dp = partial_derivative(pp, 0), dq = partial_derivative(qq, 1);
  const LaurentPoly zero(ring);

  Scenario s;
  s.name = "surface:p=" + pp.to_string() + ",q=" + qq.to_string();
  s.chart = chart;
  s.volume = VolumeForm::make(DiffForm::basis(chart, {"x", "y"}, (x * y).pow(-1)));
  s.fields.emplace_back("delta_x", VectorField::from_ambient(chart, {zero, -(x * y), dq + x * z}));
  s.fields.emplace_back("delta_y", VectorField::from_ambient(chart, {-(x * y), zero, dp + y * z}));
  s.fields.emplace_back("delta_z", VectorField::from_ambient(chart, {dq + x * z, -(dp + y * z), zero}));

  const std::vector<std::string> names{"delta_x", "delta_y", "delta_z"};
  for (const auto& f : names) s.add_check("tangent", {f});
  for (const auto& f : names) s.add_check("divfree", {f});
  s.add_check("identity1", {"delta_z", "delta_y", "w"});
  s.add_check("identity1", {"delta_z", "delta_x", "w"});
  s.add_check("identity1", {"delta_y", "delta_x", "w"});
  s.add_check("potential", {"z", "delta_z", "w"});
  s.add_check("potential", {"y", "delta_y", "w"});
  s.add_check("potential", {"x", "delta_x", "w"});
  if (dp == one && dq == one) {
    s.add_check("bracket_potential", {"delta_z", "delta_y", "w", "1 + y*z"});
  } else {
    s.add_check("bracket_potential", {"delta_z", "delta_y", "w"});
  }
  s.add_check("kernel", {"delta_z", "z"});
  s.add_check("kernel", {"delta_y", "y"});
  s.add_check("kernel", {"delta_x", "x"});
  s.add_check("condition_a", {"(delta_z, delta_y, 1)", "(delta_z, delta_x, 1)", "(delta_y, delta_x, 1)"});
  s.add_check("formula4", {"x*y*z"});
  return s;
}

// ---------------------------------------------------------------- X_{m,1}

Scenario x_m1(int m) {
  if (m < 1) throw PreconditionError("m must be at least 1");
  auto ring = Ring::make({"x", "y", "u", "v"}, {true, false, false, false});
  const LaurentPoly x = LaurentPoly::variable(ring, "x"), y = LaurentPoly::variable(ring, "y"),
                    u = LaurentPoly::variable(ring, "u"), v = LaurentPoly::variable(ring, "v");
  const LaurentPoly zero(ring);
  auto chart = Chart::make(ring, {{x.pow(m) * v - y * u - LaurentPoly::constant(ring, 1), "v"}});

  Scenario s;
  s.name = "xm1:" + std::to_string(m);
  s.chart = chart;
  s.volume = VolumeForm::make(DiffForm::basis(chart, {"x", "y", "u"}, x.pow(-m)));
  s.fields.emplace_back("lnd1", VectorField::from_ambient(chart, {zero, zero, x.pow(m), y}));
  s.fields.emplace_back("lnd2", VectorField::from_ambient(chart, {zero, x.pow(m), zero, u}));
  for (const auto& f : {"lnd1", "lnd2"}) {
    s.add_check("tangent", {f});
    s.add_check("lnd", {f});
    s.add_check("divfree", {f});
  }
  s.add_check("identity1", {"lnd1", "lnd2", "w"});
  if (m >= 2) {
    const Rational c = Rational(1) / Rational(1 - m);
    s.forms.emplace_back("tau", DiffForm::basis(chart, {"y", "u"}, x.pow(1 - m) * c));
    s.add_check("exact", {"tau", "w"});
  }
  return s;
}

// ---------------------------------------------------------------- quadric

Scenario quadric() {
  auto ring = Ring::make({"u", "v", "x"}, {true, false, false});
  const LaurentPoly u = LaurentPoly::variable(ring, "u"), v = LaurentPoly::variable(ring, "v"),
                    x = LaurentPoly::variable(ring, "x");
  const LaurentPoly zero(ring), two = LaurentPoly::constant(ring, 2);
  auto chart = Chart::make(ring, {{u * v - x * x + LaurentPoly::constant(ring, 1), "v"}});

  Scenario s;
  s.name = "quadric";
  s.chart = chart;
  s.volume = VolumeForm::make(DiffForm::basis(chart, {"u", "x"}, u.pow(-1)));
  s.fields.emplace_back("xi1", VectorField::from_ambient(chart, {zero, two * x, u}));
  s.fields.emplace_back("xi2", VectorField::from_ambient(chart, {two * x, zero, v}));
  s.fields.emplace_back("xi3", VectorField::from_ambient(chart, {u, -v, zero}));
  s.fields.emplace_back("xi4", VectorField::from_ambient(chart, {two * x * u, -(two * x * v), zero}));
  s.actions.push_back(SubstitutionAction::make("gamma", chart, {{"u", -u}, {"v", -v}, {"x", -x}}, 2));

  for (const auto& f : {"xi1", "xi2", "xi3", "xi4"}) {
    s.add_check("tangent", {f});
    s.add_check("divfree", {f});
  }
  s.add_check("lnd", {"xi1"});
  s.add_check("lnd", {"xi2"});
  s.add_check("identity1", {"xi1", "xi2", "w"});
  s.add_check("identity1", {"xi1", "xi3", "w"});
  s.add_check("identity1", {"xi2", "xi3", "w"});
  s.add_check("potential", {"x^2", "xi4", "w"});
  for (const auto& f : {"xi1", "xi2", "xi3"}) s.add_check("invariant", {f, "gamma"});
  s.add_check("character", {"xi4", "gamma", "-1"});
  s.add_check("character", {"w", "gamma", "-1"});
  return s;
}

// ---------------------------------------------------------------- products

namespace {

std::string fresh_name(const std::string& base, const std::set<std::string>& taken) {
  if (!taken.count(base)) return base;
  for (int k = 2;; ++k) {
    auto c = base + "_" + std::to_string(k);
    if (!taken.count(c)) return c;
  }
}

// Renames the second list against the first; returns the new names.
std::vector<std::string> rename_against(const std::vector<std::string>& first, const std::vector<std::string>& second) {
  std::set<std::string> taken(first.begin(), first.end());
  taken.insert(second.begin(), second.end());
  std::set<std::string> firsts(first.begin(), first.end());
  std::vector<std::string> out;
  for (const auto& n : second) {
    if (!firsts.count(n)) {
      out.push_back(n);
      continue;
    }
    auto fresh = fresh_name(n, taken);
    taken.insert(fresh);
    out.push_back(fresh);
  }
  return out;
}

template <class T>
std::vector<std::string> names_of(const Named<T>& items) {
  std::vector<std::string> out;
  for (const auto& [n, v] : items) out.push_back(n);
  return out;
}

struct Embedding {
  RingPtr ring;
  std::size_t offset;

  LaurentPoly operator()(const LaurentPoly& p) const {
    LaurentPoly r(ring);
    for (const auto& [e, c] : p.terms()) {
      Exponents big(ring->size(), 0);
      std::copy(e.begin(), e.end(), big.begin() + static_cast<std::ptrdiff_t>(offset));
      r.add_term(big, c);
    }
    return r;
  }
};

struct Factor {
  const Scenario* src;
  Embedding embed;
  std::size_t free_offset;
  std::vector<std::string> coord_names;
  std::vector<std::string> field_names;
};

VectorField lift_field(const VectorField& f, const Factor& k, const ChartPtr& chart) {
  std::vector<LaurentPoly> c(chart->ambient_dimension(), LaurentPoly(chart->ring()));
  for (std::size_t i = 0; i < f.coefficients().size(); ++i) c[k.embed.offset + i] = k.embed(f.coefficient(i));
  return VectorField::from_ambient(chart, std::move(c));
}

DiffForm lift_form(const DiffForm& a, const Factor& k, const ChartPtr& chart) {
  DiffForm r(chart, a.degree());
  for (const auto& [set, c] : a.coefficients()) r.add(set << k.free_offset, k.embed(c));
  return r;
}

Bindings lift_bindings(const SubstitutionAction& a, const Factor& k) {
  Bindings b;
  for (std::size_t i = 0; i < k.coord_names.size(); ++i) b.emplace(k.coord_names[i], k.embed(a.image(i)));
  return b;
}

}  // namespace

Scenario product(const Scenario& a, const Scenario& b) {
  const auto& ra = *a.chart->ring();
  const auto& rb = *b.chart->ring();
  auto bnames = rename_against(ra.names(), rb.names());
  std::vector<std::string> names = ra.names();
  names.insert(names.end(), bnames.begin(), bnames.end());
  std::vector<bool> inv;
  for (std::size_t i = 0; i < ra.size(); ++i) inv.push_back(ra.invertible(i));
  for (std::size_t i = 0; i < rb.size(); ++i) inv.push_back(rb.invertible(i));
  auto ring = Ring::make(names, inv);

  Factor fa{&a, {ring, 0}, 0, ra.names(), names_of(a.fields)};
  Factor fb{&b, {ring, ra.size()}, a.chart->dimension(), bnames, rename_against(names_of(a.fields), names_of(b.fields))};

  std::vector<std::pair<LaurentPoly, std::string>> rels;
  for (const auto* k : {&fa, &fb}) {
    for (const auto& r : k->src->chart->relations()) rels.emplace_back(k->embed(r.poly), k->coord_names[r.solvable]);
  }
  auto chart = Chart::make(ring, std::move(rels));

  Scenario s;
  s.name = "product:" + a.name + "|" + b.name;
  s.chart = chart;
  if (a.volume && b.volume) {
    s.volume = VolumeForm::make(wedge(lift_form(a.volume->form(), fa, chart), lift_form(b.volume->form(), fb, chart)));
  }
  const auto bscalars = rename_against(names_of(a.scalars), names_of(b.scalars));
  for (const auto& [n, v] : a.scalars) s.scalars.emplace_back(n, fa.embed(v));
  for (std::size_t i = 0; i < b.scalars.size(); ++i) s.scalars.emplace_back(bscalars[i], fb.embed(b.scalars[i].second));
  for (const auto& [n, v] : a.fields) s.fields.emplace_back(n, lift_field(v, fa, chart));
  for (std::size_t i = 0; i < b.fields.size(); ++i) {
    s.fields.emplace_back(fb.field_names[i], lift_field(b.fields[i].second, fb, chart));
  }
  std::vector<std::string> reserved = names_of(a.forms);
  reserved.push_back(s.volume_name);
  const auto bforms = rename_against(reserved, names_of(b.forms));
  for (const auto& [n, v] : a.forms) s.forms.emplace_back(n, lift_form(v, fa, chart));
  for (std::size_t i = 0; i < b.forms.size(); ++i) s.forms.emplace_back(bforms[i], lift_form(b.forms[i].second, fb, chart));
  const auto bgroups = rename_against(names_of(a.groups), names_of(b.groups));
  for (const auto& g : a.groups) s.groups.push_back(g);
  for (std::size_t i = 0; i < b.groups.size(); ++i) s.groups.emplace_back(bgroups[i], b.groups[i].second);

  // Lifted actions: each factor action alone, then every diagonal pair.
  std::vector<std::string> anames, bnames_act;
  for (const auto& x : a.actions) anames.push_back(x.name());
  for (const auto& x : b.actions) bnames_act.push_back(x.name());
  bnames_act = rename_against(anames, bnames_act);
  struct Lifted {
    std::string name;
    const SubstitutionAction* left;
    const SubstitutionAction* right;
  };
  std::vector<Lifted> lifted;
  for (const auto& x : a.actions) {
    s.actions.push_back(SubstitutionAction::make(x.name(), chart, lift_bindings(x, fa), x.order()));
    lifted.push_back({x.name(), &x, nullptr});
  }
  for (std::size_t i = 0; i < b.actions.size(); ++i) {
    const auto& x = b.actions[i];
    s.actions.push_back(SubstitutionAction::make(bnames_act[i], chart, lift_bindings(x, fb), x.order()));
    lifted.push_back({bnames_act[i], nullptr, &x});
  }
  for (const auto& x : a.actions) {
    for (std::size_t i = 0; i < b.actions.size(); ++i) {
      const auto& y = b.actions[i];
      Bindings bind = lift_bindings(x, fa);
      bind.merge(lift_bindings(y, fb));
      auto name = x.name() + "_" + bnames_act[i];
      s.actions.push_back(SubstitutionAction::make(name, chart, bind, std::lcm(x.order(), y.order())));
      lifted.push_back({name, &x, &y});
    }
  }

  for (const auto& [n, v] : s.fields) {
    s.add_check("tangent", {n});
    if (s.volume) s.add_check("divfree", {n});
  }
  for (const auto& fa_name : fa.field_names) {
    for (const auto& fb_name : fb.field_names) s.add_check("bracket", {fa_name, fb_name, "0"});
  }
  if (s.volume && !fa.field_names.empty() && !fb.field_names.empty()) {
    s.add_check("identity1", {fa.field_names.front(), fb.field_names.front(), s.volume_name});
  }

  // Invariance in the product follows from the factor characters.
  auto factor_char = [](const VectorField& f, const SubstitutionAction* act) -> std::optional<Rational> {
    if (!act) return Rational(1);
    return character(f, *act);
  };
  auto emit = [&](const std::string& obj, const std::string& act, const Rational& c) {
    if (c == Rational(1)) {
      s.add_check("invariant", {obj, act});
    } else {
      s.add_check("character", {obj, act, rstr(c)});
    }
  };
  for (const auto& l : lifted) {
    for (std::size_t i = 0; i < a.fields.size(); ++i) {
      if (auto c = factor_char(a.fields[i].second, l.left)) emit(fa.field_names[i], l.name, *c);
    }
    for (std::size_t i = 0; i < b.fields.size(); ++i) {
      if (auto c = factor_char(b.fields[i].second, l.right)) emit(fb.field_names[i], l.name, *c);
    }
    if (a.volume && b.volume) {
      auto ca = l.left ? character(a.volume->form(), *l.left) : std::optional<Rational>(1);
      auto cb = l.right ? character(b.volume->form(), *l.right) : std::optional<Rational>(1);
      if (ca && cb) emit(s.volume_name, l.name, *ca * *cb);
    }
  }
  return s;
}

Scenario gamma_example() {
  Scenario s = product(quadric(), torus(1));
  s.name = "gamma";
  const auto& chart = s.chart;
  s.fields.emplace_back("zxi4", chart->variable("z1") * s.field("xi4"));
  s.add_check("tangent", {"zxi4"});
  s.add_check("divfree", {"zxi4"});
  s.add_check("invariant", {"zxi4", "gamma_neg"});
  s.add_check("invariant", {"iota(xi4, w)", "gamma_neg"});
  s.add_check("character", {"iota(nu1, w)", "gamma_neg", "-1"});
  return s;
}

}  // namespace volform
