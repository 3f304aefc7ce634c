#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "volform/calculus.hpp"
#include "volform/groups.hpp"

namespace volform {

/// A check to run against a scenario. Arguments are DSL expressions.
struct CheckDirective {
  std::string kind;
  std::vector<std::string> args;
  std::optional<std::string> expect;

  /// "kind(arg, ...)".
  std::string label() const;
  friend bool operator==(const CheckDirective&, const CheckDirective&) = default;
};

template <class T>
using Named = std::vector<std::pair<std::string, T>>;

/// Chart plus the named objects living on it and the checks to run.
struct Scenario {
  std::string name;
  ChartPtr chart;
  std::string volume_name = "w";
  std::optional<VolumeForm> volume;
  Named<LaurentPoly> scalars;
  Named<VectorField> fields;
  Named<DiffForm> forms;
  std::vector<SubstitutionAction> actions;
  Named<Point> points;
  Named<GroupPresentation> groups;
  std::vector<CheckDirective> checks;

  /// Throws Error for unknown names.
  const VectorField& field(std::string_view name) const;
  const DiffForm& form(std::string_view name) const;
  const SubstitutionAction& action(std::string_view name) const;
  const VolumeForm& volume_form() const;

  void add_check(std::string kind, std::vector<std::string> args, std::optional<std::string> expect = std::nullopt);
};

/// (C*)^n with coordinates z1..zn, w = prod dz_i / z_i, fields nu_i = z_i d/dz_i,
/// the action neg: z -> -z and, for n >= 2, the fields z_j nu_i named nu{i}_{j}.
Scenario torus(int n);

/// SL2 on the chart a1 != 0 with b2 solved, fields xi, eta, volume
/// w = a1^-1 da1^da2^db1, point p0 and the sub-modular group data.
Scenario sl2();

/// p(x) + q(y) + x y z = 1 with fields delta_x, delta_y, delta_z and
/// w = dx^dy / (x y). p and q may live in any ring naming x resp. y.
Scenario surface_S(const LaurentPoly& p, const LaurentPoly& q);

/// x^m v - y u = 1 with v solved, w = x^-m dx^dy^du, two locally nilpotent
/// fields and, for m >= 2, the primitive tau of w.
Scenario x_m1(int m);

/// u v = x^2 - 1 with v solved, w = du^dx / u, three divergence-free fields
/// and the action gamma: (u, v, x) -> (-u, -v, -x).
Scenario quadric();

/// quadric() x torus(1) under the diagonal action (u, v, x, z1) -> negatives,
/// with the anti-invariant field xi4 lifted and twisted by z1.
Scenario gamma_example();

/// Product chart with w = w1 ^ w2, lifted fields, forms and actions. Names
/// of the second factor that clash get a numeric suffix.
Scenario product(const Scenario& a, const Scenario& b);

/// nu = xi(f) eta for commuting divergence-free xi, eta with eta(f) = 0,
/// together with the primitive i_xi i_{f eta} w of i_nu w.
struct ExactnessField {
  VectorField field;
  DiffForm primitive;
};

/// Throws PreconditionError unless d(primitive) = i_nu w.
ExactnessField exactness_field(const VectorField& xi, const VectorField& eta, const LaurentPoly& f,
                               const VolumeForm& w);

}  // namespace volform
