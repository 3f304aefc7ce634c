#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "volform/laurent.hpp"

namespace volform {

struct Relation {
  LaurentPoly poly;       // defining polynomial, F = 0 on the variety
  std::size_t solvable;   // coordinate eliminated by this relation
};

class Chart;
using ChartPtr = std::shared_ptr<const Chart>;

/// Triangular presentation of an affine variety: each relation has degree
/// exactly one in its solvable coordinate with a unit leading coefficient,
/// so eliminating solvable coordinates in order gives canonical normal forms
/// in the free coordinates (Laurent in the invertible ones).
class Chart {
 public:
  /// Relations are (F, solvable coordinate name) pairs over `ring`.
  /// Throws ChartError on a non-triangular or non-unit presentation.
  static ChartPtr make(RingPtr ring, std::vector<std::pair<LaurentPoly, std::string>> relations);

  const RingPtr& ring() const { return ring_; }
  std::size_t dimension() const { return free_.size(); }
  std::size_t ambient_dimension() const { return ring_->size(); }
  const std::string& name(std::size_t i) const { return ring_->name(i); }
  const std::vector<Relation>& relations() const { return relations_; }

  /// Ambient indices of the free coordinates, in declared order.
  const std::vector<std::size_t>& free_coordinates() const { return free_; }
  /// Position of an ambient coordinate in the free list, or npos.
  std::size_t free_position(std::size_t ambient) const { return free_pos_.at(ambient); }
  bool is_solvable(std::size_t ambient) const { return free_pos_.at(ambient) == npos; }
  /// Normal form of a solvable coordinate; the coordinate itself when free.
  const LaurentPoly& coordinate_normal_form(std::size_t ambient) const { return coord_nf_.at(ambient); }

  LaurentPoly variable(std::string_view name) const { return LaurentPoly::variable(ring_, name); }
  LaurentPoly constant(const Rational& c) const { return LaurentPoly::constant(ring_, c); }

  /// Canonical representative modulo the defining ideal, in free coordinates.
  /// Accepts polynomials over this ring or over a ring extending it.
  LaurentPoly normal_form(const LaurentPoly& p) const;

  /// Same relations over a ring with extra free, non-invertible symbols.
  ChartPtr with_parameters(const std::vector<std::string>& names) const;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  Chart() = default;

  RingPtr ring_;
  std::vector<Relation> relations_;
  std::vector<std::size_t> free_;
  std::vector<std::size_t> free_pos_;
  std::vector<LaurentPoly> coord_nf_;
  std::vector<std::pair<LaurentPoly, std::string>> source_relations_;
};

LaurentPoly normal_form(const LaurentPoly& p, const Chart& chart);

/// A point of the chart: values for every ambient coordinate.
class Point {
 public:
  /// Validates that all relations vanish and invertible coordinates are nonzero.
  Point(ChartPtr chart, std::vector<Rational> values);

  const ChartPtr& chart() const { return chart_; }
  const std::vector<Rational>& values() const { return values_; }
  const Rational& operator[](std::size_t i) const { return values_.at(i); }
  const Rational& at(std::string_view name) const;
  Assignment assignment() const;

  /// Exact value of p (over the chart ring) at this point.
  Rational evaluate(const LaurentPoly& p) const;

  std::string to_string() const;
  friend bool operator==(const Point& a, const Point& b) { return a.values_ == b.values_; }

 private:
  ChartPtr chart_;
  std::vector<Rational> values_;
};

bool on_chart(const Chart& chart, const std::vector<Rational>& values);

/// Solves the relations for the solvable coordinates given values of the free
/// ones. Throws ChartError when the result is not a chart point.
Point complete_point(const ChartPtr& chart, const Assignment& free_values);

/// Deterministic point: free coordinates drawn from [-9, 9] \ {0}, solvable
/// coordinates solved exactly. Retries up to `retries` draws.
Point sample_point(const ChartPtr& chart, std::uint64_t seed, int retries = 100);

/// Finite-order automorphism of a chart given by substitution of coordinates.
class SubstitutionAction {
 public:
  /// Coordinates missing from `images` are fixed. Validates that every
  /// defining polynomial maps into the ideal and that the `order`-fold
  /// composite is the identity.
  static SubstitutionAction make(std::string name, ChartPtr chart, Bindings images, int order);

  const std::string& name() const { return name_; }
  const ChartPtr& chart() const { return chart_; }
  int order() const { return order_; }
  /// Image of an ambient coordinate (normal form).
  const LaurentPoly& image(std::size_t ambient) const { return images_.at(ambient); }
  const Bindings& bindings() const { return bindings_; }

  /// normal_form(p o sigma).
  LaurentPoly apply(const LaurentPoly& p) const;
  /// sigma^k as an action of the same declared order.
  SubstitutionAction power(int k) const;

 private:
  SubstitutionAction() = default;

  std::string name_;
  ChartPtr chart_;
  int order_ = 1;
  std::vector<LaurentPoly> images_;
  Bindings bindings_;
};

bool is_invariant(const LaurentPoly& p, const SubstitutionAction& action);

}  // namespace volform
