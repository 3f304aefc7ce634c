#include "volform/calculus.hpp"

#include <bit>
#include <sstream>

#include "volform/error.hpp"

namespace volform {

int popcount(IndexSet s) { return std::popcount(s); }

namespace {

// (-1)^(number of elements of `set` strictly below position j)
int sign_below(IndexSet set, std::size_t j) {
  const IndexSet below = set & ((IndexSet{1} << j) - 1);
  return (std::popcount(below) % 2) ? -1 : 1;
}

// Sign of the shuffle sorting the concatenation I ++ J.
int shuffle_sign(IndexSet a, IndexSet b) {
  int inversions = 0;
  for (IndexSet rest = b; rest; rest &= rest - 1) {
    const int j = std::countr_zero(rest);
    inversions += std::popcount(a >> (j + 1));
  }
  return (inversions % 2) ? -1 : 1;
}

}  // namespace

// ---------------------------------------------------------------- fields

bool is_tangent(const std::vector<LaurentPoly>& coefficients, const Chart& chart) {
  if (coefficients.size() != chart.ambient_dimension()) {
    throw VariableMismatch("field has " + std::to_string(coefficients.size()) + " components on a chart with " +
                           std::to_string(chart.ambient_dimension()) + " coordinates");
  }
  for (const auto& r : chart.relations()) {
    LaurentPoly sum(chart.ring());
    for (std::size_t i = 0; i < coefficients.size(); ++i) {
      if (coefficients[i].is_zero() || !r.poly.involves(i)) continue;
      sum += coefficients[i] * partial_derivative(r.poly, i);
    }
    if (!chart.normal_form(sum).is_zero()) return false;
  }
  return true;
}

VectorField::VectorField(ChartPtr chart, std::vector<LaurentPoly> coefficients)
    : chart_(std::move(chart)), coeffs_(std::move(coefficients)) {}

VectorField VectorField::from_ambient(ChartPtr chart, std::vector<LaurentPoly> coefficients) {
  if (coefficients.size() != chart->ambient_dimension()) {
    throw VariableMismatch("field component count does not match the chart");
  }
  for (auto& c : coefficients) c = chart->normal_form(c);
  if (!is_tangent(coefficients, *chart)) throw NotTangent("field is not tangent to the chart");
  return VectorField(std::move(chart), std::move(coefficients));
}

VectorField VectorField::from_free(ChartPtr chart, const std::vector<LaurentPoly>& free_components) {
  const auto& free = chart->free_coordinates();
  if (free_components.size() != free.size()) throw VariableMismatch("free component count does not match the chart");
  std::vector<LaurentPoly> coeffs(chart->ambient_dimension(), LaurentPoly(chart->ring()));
  for (std::size_t j = 0; j < free.size(); ++j) coeffs[free[j]] = chart->normal_form(free_components[j]);
  VectorField v(chart, coeffs);
  for (const auto& r : chart->relations()) {
    v.coeffs_[r.solvable] = v.apply(chart->coordinate_normal_form(r.solvable));
  }
  return v;
}

VectorField VectorField::zero(ChartPtr chart) {
  const auto n = chart->ambient_dimension();
  return VectorField(chart, std::vector<LaurentPoly>(n, LaurentPoly(chart->ring())));
}

const LaurentPoly& VectorField::coefficient(std::string_view name) const {
  return coeffs_.at(chart_->ring()->require(name));
}

const LaurentPoly& VectorField::free_component(std::size_t free_pos) const {
  return coeffs_.at(chart_->free_coordinates().at(free_pos));
}

bool VectorField::is_zero() const {
  for (const auto& c : coeffs_)
    if (!c.is_zero()) return false;
  return true;
}

LaurentPoly VectorField::apply(const LaurentPoly& f) const {
  const LaurentPoly g = chart_->normal_form(f);
  LaurentPoly out(chart_->ring());
  for (auto i : chart_->free_coordinates()) {
    if (coeffs_[i].is_zero() || !g.involves(i)) continue;
    out += coeffs_[i] * partial_derivative(g, i);
  }
  return out;
}

void VectorField::check_chart(const VectorField& o) const {
  if (chart_ != o.chart_) throw VariableMismatch("fields live on different charts");
}

VectorField VectorField::operator-() const {
  VectorField r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

VectorField& VectorField::operator+=(const VectorField& o) {
  check_chart(o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

VectorField& VectorField::operator-=(const VectorField& o) {
  check_chart(o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

VectorField operator*(const LaurentPoly& f, const VectorField& v) {
  const LaurentPoly g = v.chart_->normal_form(f);
  VectorField r = v;
  for (auto& c : r.coeffs_) c = v.chart_->normal_form(g * c);
  return r;
}

bool operator==(const VectorField& a, const VectorField& b) {
  return a.chart_ == b.chart_ && a.coeffs_ == b.coeffs_;
}

std::string VectorField::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << '(' << coeffs_[i] << ") d/d" << chart_->name(i);
  }
  if (first) return "0";
  return os.str();
}

VectorField lie_bracket(const VectorField& xi, const VectorField& eta) {
  if (xi.chart() != eta.chart()) throw VariableMismatch("fields live on different charts");
  const auto& chart = xi.chart();
  std::vector<LaurentPoly> coeffs;
  coeffs.reserve(chart->ambient_dimension());
  for (std::size_t i = 0; i < chart->ambient_dimension(); ++i) {
    coeffs.push_back(xi.apply(eta.coefficient(i)) - eta.apply(xi.coefficient(i)));
  }
  return VectorField::from_ambient(chart, std::move(coeffs));
}

// ---------------------------------------------------------------- forms

DiffForm::DiffForm(ChartPtr chart, int degree) : chart_(std::move(chart)), degree_(degree) {
  if (degree < -1) throw Error("form degree must be at least -1");
}

DiffForm DiffForm::scalar(ChartPtr chart, const LaurentPoly& f) {
  DiffForm a(std::move(chart), 0);
  a.add(0, f);
  return a;
}

DiffForm DiffForm::differential(ChartPtr chart, std::string_view coordinate) {
  const auto i = chart->ring()->require(coordinate);
  if (chart->is_solvable(i)) {
    return exterior_derivative(scalar(chart, chart->coordinate_normal_form(i)));
  }
  DiffForm a(chart, 1);
  a.add(IndexSet{1} << chart->free_position(i), chart->constant(1));
  return a;
}

DiffForm DiffForm::basis(ChartPtr chart, const std::vector<std::string>& coordinates,
                         const LaurentPoly& coefficient) {
  DiffForm a = scalar(chart, coefficient);
  for (const auto& c : coordinates) a = wedge(a, differential(chart, c));
  return a;
}

LaurentPoly DiffForm::coefficient(IndexSet set) const {
  auto it = coeffs_.find(set);
  return it == coeffs_.end() ? LaurentPoly(chart_->ring()) : it->second;
}

void DiffForm::add(IndexSet set, const LaurentPoly& c) {
  if (degree_ < 0 || popcount(set) != degree_) throw Error("index set does not match the form degree");
  if (set >> chart_->dimension()) throw Error("index set outside the free coordinates");
  LaurentPoly v = chart_->normal_form(c);
  if (v.is_zero()) return;
  auto [it, inserted] = coeffs_.try_emplace(set, v);
  if (!inserted) {
    it->second += v;
    if (it->second.is_zero()) coeffs_.erase(it);
  }
}

void DiffForm::check_compatible(const DiffForm& o) const {
  if (chart_ != o.chart_) throw VariableMismatch("forms live on different charts");
  if (degree_ != o.degree_) throw Error("cannot add forms of different degrees");
}

DiffForm DiffForm::operator-() const {
  DiffForm r = *this;
  for (auto& [s, c] : r.coeffs_) c = -c;
  return r;
}

DiffForm& DiffForm::operator+=(const DiffForm& o) {
  check_compatible(o);
  for (const auto& [s, c] : o.coeffs_) add(s, c);
  return *this;
}

DiffForm& DiffForm::operator-=(const DiffForm& o) {
  check_compatible(o);
  for (const auto& [s, c] : o.coeffs_) add(s, -c);
  return *this;
}

DiffForm operator*(const LaurentPoly& f, const DiffForm& a) {
  DiffForm r(a.chart_, a.degree_);
  const LaurentPoly g = a.chart_->normal_form(f);
  for (const auto& [s, c] : a.coeffs_) r.add(s, g * c);
  return r;
}

DiffForm operator*(const Rational& k, const DiffForm& a) {
  DiffForm r(a.chart_, a.degree_);
  for (const auto& [s, c] : a.coeffs_) r.add(s, c * k);
  return r;
}

bool operator==(const DiffForm& a, const DiffForm& b) {
  if (a.chart_ != b.chart_) return false;
  if (a.coeffs_.empty() && b.coeffs_.empty()) return true;  // zero forms of any degree
  return a.degree_ == b.degree_ && a.coeffs_ == b.coeffs_;
}

std::string DiffForm::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [s, c] : coeffs_) {
    if (!first) os << " + ";
    first = false;
    os << '(' << c << ')';
    bool first_d = true;
    for (std::size_t j = 0; j < chart_->dimension(); ++j) {
      if (!(s >> j & 1)) continue;
      os << (first_d ? " " : "^") << 'd' << chart_->name(chart_->free_coordinates()[j]);
      first_d = false;
    }
  }
  return os.str();
}

DiffForm exterior_derivative(const DiffForm& a) {
  const auto& chart = a.chart();
  DiffForm r(chart, a.degree() + 1);
  const auto& free = chart->free_coordinates();
  for (const auto& [s, c] : a.coefficients()) {
    for (std::size_t j = 0; j < free.size(); ++j) {
      if (s >> j & 1) continue;
      if (!c.involves(free[j])) continue;
      LaurentPoly dc = partial_derivative(c, free[j]);
      if (sign_below(s, j) < 0) dc = -dc;
      r.add(s | (IndexSet{1} << j), dc);
    }
  }
  return r;
}

DiffForm wedge(const DiffForm& a, const DiffForm& b) {
  if (a.chart() != b.chart()) throw VariableMismatch("forms live on different charts");
  DiffForm r(a.chart(), a.degree() + b.degree());
  if (a.degree() < 0 || b.degree() < 0) return DiffForm(a.chart(), std::max(-1, a.degree() + b.degree()));
  if (static_cast<std::size_t>(r.degree()) > a.chart()->dimension()) return r;
  for (const auto& [sa, ca] : a.coefficients()) {
    for (const auto& [sb, cb] : b.coefficients()) {
      if (sa & sb) continue;
      LaurentPoly c = ca * cb;
      if (shuffle_sign(sa, sb) < 0) c = -c;
      r.add(sa | sb, c);
    }
  }
  return r;
}

DiffForm interior_product(const VectorField& xi, const DiffForm& a) {
  if (xi.chart() != a.chart()) throw VariableMismatch("field and form live on different charts");
  DiffForm r(a.chart(), a.degree() - 1);
  if (a.degree() <= 0) return r;
  for (const auto& [s, c] : a.coefficients()) {
    int k = 0;
    for (IndexSet rest = s; rest; rest &= rest - 1, ++k) {
      const int j = std::countr_zero(rest);
      const LaurentPoly& comp = xi.free_component(static_cast<std::size_t>(j));
      if (comp.is_zero()) continue;
      LaurentPoly t = comp * c;
      if (k % 2) t = -t;
      r.add(s & ~(IndexSet{1} << j), t);
    }
  }
  return r;
}

DiffForm lie_derivative(const VectorField& xi, const DiffForm& a) {
  DiffForm r = interior_product(xi, exterior_derivative(a));
  if (a.degree() > 0) r += exterior_derivative(interior_product(xi, a));
  return r;
}

// ---------------------------------------------------------------- volume forms

VolumeForm VolumeForm::make(const DiffForm& top) {
  const auto& chart = top.chart();
  const auto n = chart->dimension();
  if (top.degree() != static_cast<int>(n)) {
    throw UnsupportedVolumeForm("volume form must have top degree " + std::to_string(n) + ", got " +
                                std::to_string(top.degree()));
  }
  const IndexSet full = n == 0 ? 0 : ((IndexSet{1} << n) - 1);
  LaurentPoly density = top.coefficient(full);
  if (density.is_zero()) throw UnsupportedVolumeForm("volume form vanishes identically");
  if (!density.is_unit()) {
    throw UnsupportedVolumeForm("volume form density '" + density.to_string() +
                                "' is not a constant times a unit monomial");
  }
  return VolumeForm(top, std::move(density));
}

LaurentPoly divergence(const VectorField& xi, const VolumeForm& w) {
  if (xi.chart() != w.chart()) throw VariableMismatch("field and volume form live on different charts");
  const DiffForm top = exterior_derivative(interior_product(xi, w.form()));
  const auto n = w.chart()->dimension();
  const IndexSet full = n == 0 ? 0 : ((IndexSet{1} << n) - 1);
  return w.chart()->normal_form(top.coefficient(full) * w.density().unit_inverse());
}

DiffForm theta(const VectorField& xi, const VolumeForm& w) { return interior_product(xi, w.form()); }

// ---------------------------------------------------------------- flows

Flow lnd_flow(const VectorField& xi, const LaurentPoly& t, int bound) {
  const auto& chart = xi.chart();
  const RingPtr& tr = t.ring();
  if (!same_ring(tr, chart->ring()) && !chart->ring()->is_prefix_of(*tr)) {
    throw VariableMismatch("flow parameter must live in the chart ring or a parameter extension of it");
  }
  Flow flow;
  flow.ring = tr;
  const auto n = chart->ambient_dimension();
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<LaurentPoly> seq{chart->coordinate_normal_form(i)};
    while (!seq.back().is_zero()) {
      if (static_cast<int>(seq.size()) - 1 > bound) {
        throw NotNilpotent("field is not locally nilpotent within bound " + std::to_string(bound) +
                           " on coordinate '" + chart->name(i) + "'");
      }
      seq.push_back(xi.apply(seq.back()));
    }
    flow.steps = std::max(flow.steps, static_cast<int>(seq.size()) - 2);
    LaurentPoly image(tr);
    LaurentPoly tk = LaurentPoly::constant(tr, 1);
    Rational factorial = 1;
    for (std::size_t k = 0; k + 1 < seq.size(); ++k) {
      if (k > 0) {
        tk = tk * t;
        factorial *= Rational(static_cast<long>(k));
      }
      image += rebase(seq[k], tr) * tk * factorial.inverse();
    }
    flow.images.push_back(chart->normal_form(image));
  }
  Bindings b;
  for (std::size_t i = 0; i < n; ++i) b.emplace(chart->name(i), flow.images[i]);
  for (const auto& r : chart->relations()) {
    if (!chart->normal_form(substitute(r.poly, b, tr)).is_zero()) {
      throw NotNilpotent("flow does not preserve the relation " + r.poly.to_string());
    }
  }
  return flow;
}

// ---------------------------------------------------------------- actions

DiffForm pullback(const DiffForm& a, const SubstitutionAction& action) {
  const auto& chart = a.chart();
  if (chart != action.chart()) throw VariableMismatch("form and action live on different charts");
  const auto& free = chart->free_coordinates();
  std::vector<DiffForm> dimages;
  dimages.reserve(free.size());
  for (auto i : free) dimages.push_back(exterior_derivative(DiffForm::scalar(chart, action.image(i))));
  DiffForm r(chart, a.degree());
  for (const auto& [s, c] : a.coefficients()) {
    DiffForm term = DiffForm::scalar(chart, action.apply(c));
    for (IndexSet rest = s; rest; rest &= rest - 1) {
      term = wedge(term, dimages[static_cast<std::size_t>(std::countr_zero(rest))]);
    }
    r += term;
  }
  return r;
}

bool is_invariant(const VectorField& xi, const SubstitutionAction& action) {
  if (xi.chart() != action.chart()) throw VariableMismatch("field and action live on different charts");
  for (std::size_t i = 0; i < xi.chart()->ambient_dimension(); ++i) {
    if (!(xi.apply(action.image(i)) == action.apply(xi.coefficient(i)))) return false;
  }
  return true;
}

bool is_invariant(const DiffForm& a, const SubstitutionAction& action) { return pullback(a, action) == a; }

std::optional<Rational> character(const DiffForm& a, const SubstitutionAction& action) {
  const DiffForm b = pullback(a, action);
  if (a.is_zero()) return b.is_zero() ? std::optional<Rational>(1) : std::nullopt;
  const auto& [s, c] = *a.coefficients().begin();
  const LaurentPoly bc = b.coefficient(s);
  if (bc.is_zero()) return std::nullopt;
  const Rational k = bc.leading_coefficient() / c.leading_coefficient();
  if (k * a == b) return k;
  return std::nullopt;
}

}  // namespace volform

namespace volform {

std::optional<Rational> character(const VectorField& xi, const SubstitutionAction& action) {
  if (xi.chart() != action.chart()) throw VariableMismatch("field and action live on different charts");
  std::optional<Rational> k;
  for (std::size_t i = 0; i < xi.chart()->ambient_dimension(); ++i) {
    const LaurentPoly lhs = xi.apply(action.image(i));
    const LaurentPoly rhs = action.apply(xi.coefficient(i));
    if (lhs.is_zero() != rhs.is_zero()) return std::nullopt;
    if (lhs.is_zero()) continue;
    if (!k) k = lhs.leading_coefficient() / rhs.leading_coefficient();
    if (!(lhs == rhs * *k)) return std::nullopt;
  }
  return k ? k : std::optional<Rational>(1);
}

}  // namespace volform
