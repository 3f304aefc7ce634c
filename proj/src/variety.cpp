#include "volform/variety.hpp"

#include <random>
#include <sstream>

#include "volform/error.hpp"

namespace volform {

ChartPtr Chart::make(RingPtr ring, std::vector<std::pair<LaurentPoly, std::string>> relations) {
  auto chart = std::shared_ptr<Chart>(new Chart());
  chart->ring_ = ring;
  chart->source_relations_ = relations;
  const std::size_t n = ring->size();
  chart->free_pos_.assign(n, 0);
  std::vector<bool> solvable(n, false);
  Bindings solutions;

  for (std::size_t k = 0; k < relations.size(); ++k) {
    auto& [poly, name] = relations[k];
    if (!same_ring(poly.ring(), ring)) throw ChartError("relation is not over the chart's coordinates");
    const auto s = ring->index_of(name);
    if (!s) throw ChartError("solvable coordinate '" + name + "' is not a chart coordinate");
    if (solvable[*s]) throw ChartError("coordinate '" + name + "' is solved by two relations");
    if (ring->invertible(*s)) {
      throw ChartError("solvable coordinate '" + name + "' cannot be flagged invertible");
    }
    // Later solvable coordinates must not occur in earlier relations.
    for (std::size_t j = k + 1; j < relations.size(); ++j) {
      if (auto later = ring->index_of(relations[j].second); later && poly.involves(*later)) {
        throw ChartError("triangular presentation required: relation " + std::to_string(k + 1) +
                         " involves '" + relations[j].second + "' solved by a later relation");
      }
    }
    const LaurentPoly reduced = solutions.empty() ? poly : substitute(poly, solutions, ring);
    if (reduced.min_exponent(*s) < 0 || reduced.max_exponent(*s) != 1) {
      throw ChartError("relation must have degree exactly 1 in its solvable coordinate '" + name + "'");
    }
    LaurentPoly lead(ring);
    LaurentPoly rest(ring);
    for (const auto& [e, c] : reduced.terms()) {
      if (e[*s] == 1) {
        Exponents d = e;
        d[*s] = 0;
        lead.add_term(d, c);
      } else {
        rest.add_term(e, c);
      }
    }
    if (!lead.is_unit()) {
      throw ChartError("elimination requires inverting the non-invertible coefficient '" +
                       lead.to_string() + "' of '" + name + "'");
    }
    solvable[*s] = true;
    solutions.insert_or_assign(name, -(rest * lead.unit_inverse()));
    chart->relations_.push_back({poly, *s});
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (solvable[i]) {
      chart->free_pos_[i] = npos;
    } else {
      chart->free_pos_[i] = chart->free_.size();
      chart->free_.push_back(i);
    }
  }
  if (chart->free_.size() > 31) throw ChartError("at most 31 free coordinates are supported");
  for (std::size_t i = 0; i < n; ++i) {
    auto it = solutions.find(ring->name(i));
    chart->coord_nf_.push_back(it != solutions.end() ? it->second : LaurentPoly::variable(ring, i));
  }
  return chart;
}

LaurentPoly Chart::normal_form(const LaurentPoly& p) const {
  const bool own = same_ring(p.ring(), ring_);
  if (!own && !ring_->is_prefix_of(*p.ring())) {
    throw VariableMismatch("normal_form: polynomial is not over the chart's coordinates");
  }
  bool any = false;
  for (const auto& r : relations_) any = any || p.involves(r.solvable);
  if (!any) return p;
  Bindings b;
  for (const auto& r : relations_) {
    if (!p.involves(r.solvable)) continue;
    b.emplace(ring_->name(r.solvable), own ? coord_nf_[r.solvable] : rebase(coord_nf_[r.solvable], p.ring()));
  }
  return substitute(p, b, p.ring());
}

ChartPtr Chart::with_parameters(const std::vector<std::string>& names) const {
  auto ext = ring_->extend(names);
  std::vector<std::pair<LaurentPoly, std::string>> rels;
  for (const auto& [poly, name] : source_relations_) rels.emplace_back(rebase(poly, ext), name);
  return make(ext, std::move(rels));
}

LaurentPoly normal_form(const LaurentPoly& p, const Chart& chart) { return chart.normal_form(p); }

// ---------------------------------------------------------------- Point

bool on_chart(const Chart& chart, const std::vector<Rational>& values) {
  if (values.size() != chart.ambient_dimension()) return false;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (chart.ring()->invertible(i) && values[i].is_zero()) return false;
  }
  for (const auto& r : chart.relations()) {
    if (!evaluate(r.poly, values).is_zero()) return false;
  }
  return true;
}

Point::Point(ChartPtr chart, std::vector<Rational> values) : chart_(std::move(chart)), values_(std::move(values)) {
  if (!on_chart(*chart_, values_)) throw ChartError("point " + to_string() + " is not on the chart");
}

const Rational& Point::at(std::string_view name) const { return values_.at(chart_->ring()->require(name)); }

Assignment Point::assignment() const {
  Assignment a;
  for (std::size_t i = 0; i < values_.size(); ++i) a.emplace(chart_->name(i), values_[i]);
  return a;
}

Rational Point::evaluate(const LaurentPoly& p) const { return volform::evaluate(p, values_); }

std::string Point::to_string() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (i) os << ", ";
    os << chart_->name(i) << ": " << values_[i];
  }
  os << '}';
  return os.str();
}

Point complete_point(const ChartPtr& chart, const Assignment& free_values) {
  const auto& ring = *chart->ring();
  std::vector<Rational> values(ring.size());
  for (const auto& [name, v] : free_values) {
    const auto i = ring.index_of(name);
    if (!i) throw ChartError("point assigns unknown coordinate '" + name + "'");
    values[*i] = v;
  }
  for (auto i : chart->free_coordinates()) {
    if (free_values.find(ring.name(i)) == free_values.end()) {
      throw ChartError("point leaves free coordinate '" + ring.name(i) + "' unassigned");
    }
    if (ring.invertible(i) && values[i].is_zero()) {
      throw ChartError("zero assigned to invertible coordinate '" + ring.name(i) + "'");
    }
  }
  for (const auto& r : chart->relations()) {
    const Rational v = evaluate(chart->coordinate_normal_form(r.solvable), values);
    const auto& name = ring.name(r.solvable);
    if (auto given = free_values.find(name); given != free_values.end() && given->second != v) {
      throw ChartError("value " + given->second.to_string() + " for '" + name +
                       "' contradicts the relation (expected " + v.to_string() + ")");
    }
    values[r.solvable] = v;
  }
  return Point(chart, std::move(values));
}

Point sample_point(const ChartPtr& chart, std::uint64_t seed, int retries) {
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < retries; ++attempt) {
    Assignment free_values;
    for (auto i : chart->free_coordinates()) {
      const int k = static_cast<int>(rng() % 18);
      free_values.emplace(chart->name(i), Rational(k < 9 ? k - 9 : k - 8));
    }
    try {
      return complete_point(chart, free_values);
    } catch (const Error&) {
      continue;
    }
  }
  throw ChartError("sample_point: retry budget of " + std::to_string(retries) + " draws exhausted");
}

// ---------------------------------------------------------------- actions

SubstitutionAction SubstitutionAction::make(std::string name, ChartPtr chart, Bindings images, int order) {
  if (order < 1) throw ChartError("action '" + name + "': order must be positive");
  SubstitutionAction a;
  a.name_ = std::move(name);
  a.chart_ = chart;
  a.order_ = order;
  const auto& ring = *chart->ring();
  for (const auto& [coord, image] : images) {
    if (!ring.index_of(coord)) throw ChartError("action '" + a.name_ + "' moves unknown coordinate '" + coord + "'");
    if (!same_ring(image.ring(), chart->ring())) {
      throw ChartError("action '" + a.name_ + "': image of '" + coord + "' is not over the chart");
    }
  }
  for (std::size_t i = 0; i < ring.size(); ++i) {
    auto it = images.find(ring.name(i));
    LaurentPoly img = chart->normal_form(it != images.end() ? it->second : LaurentPoly::variable(chart->ring(), i));
    if (ring.invertible(i) && !img.is_unit()) {
      throw ChartError("action '" + a.name_ + "': image of invertible coordinate '" + ring.name(i) +
                       "' must be a unit, got " + img.to_string());
    }
    a.bindings_.emplace(ring.name(i), img);
    a.images_.push_back(std::move(img));
  }
  for (const auto& r : chart->relations()) {
    if (!a.apply(r.poly).is_zero()) {
      throw ChartError("action '" + a.name_ + "' does not preserve the relation " + r.poly.to_string());
    }
  }
  std::vector<LaurentPoly> iter = a.images_;
  for (int k = 1; k < order; ++k) {
    for (auto& p : iter) p = a.apply(p);
  }
  for (std::size_t i = 0; i < ring.size(); ++i) {
    if (!(iter[i] == chart->coordinate_normal_form(i))) {
      throw ChartError("action '" + a.name_ + "' does not have order " + std::to_string(order));
    }
  }
  return a;
}

LaurentPoly SubstitutionAction::apply(const LaurentPoly& p) const {
  return chart_->normal_form(substitute(p, bindings_, chart_->ring()));
}

SubstitutionAction SubstitutionAction::power(int k) const {
  k %= order_;
  if (k < 0) k += order_;
  Bindings b;
  const auto& ring = *chart_->ring();
  for (std::size_t i = 0; i < ring.size(); ++i) {
    LaurentPoly img = chart_->coordinate_normal_form(i);
    for (int j = 0; j < k; ++j) img = apply(img);
    b.emplace(ring.name(i), img);
  }
  return make(name_ + "^" + std::to_string(k), chart_, std::move(b), order_);
}

bool is_invariant(const LaurentPoly& p, const SubstitutionAction& action) {
  return action.apply(p) == action.chart()->normal_form(p);
}

}  // namespace volform
