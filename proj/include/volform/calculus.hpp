#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "volform/laurent.hpp"
#include "volform/variety.hpp"

namespace volform {

/// True iff normal_form(sum_i coeff_i dF/dx_i) = 0 for every relation F.
/// `coefficients` are ambient, one per chart coordinate.
bool is_tangent(const std::vector<LaurentPoly>& coefficients, const Chart& chart);

/// Derivation of the chart's coordinate ring, stored by its ambient
/// coefficients in normal form. Always tangent.
class VectorField {
 public:
  /// Throws NotTangent.
  static VectorField from_ambient(ChartPtr chart, std::vector<LaurentPoly> coefficients);
  /// Components along the free coordinates; the solvable components are
  /// whatever tangency forces.
  static VectorField from_free(ChartPtr chart, const std::vector<LaurentPoly>& free_components);
  static VectorField zero(ChartPtr chart);

  const ChartPtr& chart() const { return chart_; }
  const LaurentPoly& coefficient(std::size_t ambient) const { return coeffs_.at(ambient); }
  const LaurentPoly& coefficient(std::string_view name) const;
  const std::vector<LaurentPoly>& coefficients() const { return coeffs_; }
  /// Component along the free coordinate at position `free_pos`.
  const LaurentPoly& free_component(std::size_t free_pos) const;
  bool is_zero() const;

  /// xi(f) in normal form.
  LaurentPoly apply(const LaurentPoly& f) const;

  VectorField operator-() const;
  VectorField& operator+=(const VectorField& o);
  VectorField& operator-=(const VectorField& o);
  friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
  friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
  friend VectorField operator*(const LaurentPoly& f, const VectorField& v);
  friend bool operator==(const VectorField& a, const VectorField& b);

  /// "c1 d/dx + c2 d/dy" with zero components omitted.
  std::string to_string() const;

 private:
  VectorField(ChartPtr chart, std::vector<LaurentPoly> coefficients);
  void check_chart(const VectorField& o) const;

  ChartPtr chart_;
  std::vector<LaurentPoly> coeffs_;
};

/// Index set of free coordinates encoded as a bit mask over free positions.
using IndexSet = std::uint32_t;

/// Differential form in the free coordinates: coefficient per sorted index
/// set, so antisymmetry is canonical and equality is coefficient comparison.
class DiffForm {
 public:
  DiffForm(ChartPtr chart, int degree);

  static DiffForm scalar(ChartPtr chart, const LaurentPoly& f);
  /// d of a coordinate; for a solvable coordinate this is d of its normal form.
  static DiffForm differential(ChartPtr chart, std::string_view coordinate);
  /// coefficient * dx_{i1} ^ ... ^ dx_{ik} for free coordinate names, in the given order.
  static DiffForm basis(ChartPtr chart, const std::vector<std::string>& coordinates,
                        const LaurentPoly& coefficient);

  const ChartPtr& chart() const { return chart_; }
  int degree() const { return degree_; }
  const std::map<IndexSet, LaurentPoly>& coefficients() const { return coeffs_; }
  LaurentPoly coefficient(IndexSet set) const;
  bool is_zero() const { return coeffs_.empty(); }

  /// Adds c to the coefficient of `set` (after normal form).
  void add(IndexSet set, const LaurentPoly& c);

  DiffForm operator-() const;
  DiffForm& operator+=(const DiffForm& o);
  DiffForm& operator-=(const DiffForm& o);
  friend DiffForm operator+(DiffForm a, const DiffForm& b) { return a += b; }
  friend DiffForm operator-(DiffForm a, const DiffForm& b) { return a -= b; }
  friend DiffForm operator*(const LaurentPoly& f, const DiffForm& a);
  friend DiffForm operator*(const Rational& c, const DiffForm& a);
  friend bool operator==(const DiffForm& a, const DiffForm& b);

  std::string to_string() const;

 private:
  void check_compatible(const DiffForm& o) const;

  ChartPtr chart_;
  int degree_;
  std::map<IndexSet, LaurentPoly> coeffs_;
};

DiffForm exterior_derivative(const DiffForm& a);
/// Degree overflow yields the zero form of the summed degree.
DiffForm wedge(const DiffForm& a, const DiffForm& b);
/// Contraction inserting the field in the first slot.
DiffForm interior_product(const VectorField& xi, const DiffForm& a);
/// d i_xi + i_xi d.
DiffForm lie_derivative(const VectorField& xi, const DiffForm& a);
/// Coefficients (xi eta - eta xi)(x_i).
VectorField lie_bracket(const VectorField& xi, const VectorField& eta);

/// Nonvanishing top-degree form whose density is a constant times a unit
/// Laurent monomial.
class VolumeForm {
 public:
  /// Throws UnsupportedVolumeForm.
  static VolumeForm make(const DiffForm& top);

  const DiffForm& form() const { return form_; }
  const ChartPtr& chart() const { return form_.chart(); }
  /// Coefficient of dx_1 ^ ... ^ dx_n.
  const LaurentPoly& density() const { return density_; }

 private:
  VolumeForm(DiffForm form, LaurentPoly density) : form_(std::move(form)), density_(std::move(density)) {}

  DiffForm form_;
  LaurentPoly density_;
};

/// The scalar g with L_xi w = g w.
LaurentPoly divergence(const VectorField& xi, const VolumeForm& w);
/// i_xi w.
DiffForm theta(const VectorField& xi, const VolumeForm& w);

/// exp(t xi) applied to every coordinate.
struct Flow {
  RingPtr ring;                    // ring of the time parameter
  std::vector<LaurentPoly> images; // one per ambient coordinate
  int steps = 0;                   // largest k with xi^k(x_i) != 0
};

/// `t` lives in the chart's ring or in `chart->with_parameters(...)`'s ring.
/// Throws NotNilpotent when some xi^(bound+1)(x_i) is nonzero.
Flow lnd_flow(const VectorField& xi, const LaurentPoly& t, int bound = 32);

/// Pullback along a substitution action.
DiffForm pullback(const DiffForm& a, const SubstitutionAction& action);
bool is_invariant(const VectorField& xi, const SubstitutionAction& action);
bool is_invariant(const DiffForm& a, const SubstitutionAction& action);
/// The constant c with sigma^* a = c a, if there is one.
std::optional<Rational> character(const DiffForm& a, const SubstitutionAction& action);
/// The constant c with sigma_* xi = c xi, if there is one.
std::optional<Rational> character(const VectorField& xi, const SubstitutionAction& action);

int popcount(IndexSet s);

}  // namespace volform
