#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "volform/rational.hpp"

namespace volform {

/// Ordered variable list with per-variable invertibility flags. Shared by
/// every polynomial built over it.
class Ring {
 public:
  static std::shared_ptr<const Ring> make(std::vector<std::string> names,
                                          std::vector<bool> invertible);

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  bool invertible(std::size_t i) const { return invertible_.at(i); }
  std::optional<std::size_t> index_of(std::string_view name) const;
  /// Throws UnknownVariable.
  std::size_t require(std::string_view name) const;

  /// New ring with `extra` non-invertible variables appended.
  std::shared_ptr<const Ring> extend(const std::vector<std::string>& extra) const;
  /// True when this ring's variables form a prefix of `other` with equal flags.
  bool is_prefix_of(const Ring& other) const;

  friend bool operator==(const Ring& a, const Ring& b) {
    return a.names_ == b.names_ && a.invertible_ == b.invertible_;
  }

 private:
  Ring(std::vector<std::string> names, std::vector<bool> invertible);

  std::vector<std::string> names_;
  std::vector<bool> invertible_;
};

using RingPtr = std::shared_ptr<const Ring>;

bool same_ring(const RingPtr& a, const RingPtr& b);

using Exponents = std::vector<int>;

/// Graded lexicographic order: total degree first, then the first variable
/// with a differing exponent decides.
struct GrLexLess {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

int total_degree(const Exponents& e);

/// Sparse multivariate Laurent polynomial with rational coefficients.
/// Terms are kept in grlex order with no zero coefficients, so structural
/// equality is equality of polynomials.
class LaurentPoly {
 public:
  using TermMap = std::map<Exponents, Rational, GrLexLess>;

  explicit LaurentPoly(RingPtr ring);

  static LaurentPoly constant(RingPtr ring, const Rational& c);
  static LaurentPoly variable(RingPtr ring, std::string_view name);
  static LaurentPoly variable(RingPtr ring, std::size_t index);
  /// Throws DomainError when a negative exponent sits on a non-invertible variable.
  static LaurentPoly monomial(RingPtr ring, Exponents exponents, const Rational& coefficient = 1);

  const RingPtr& ring() const { return ring_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Value of a constant polynomial (zero included).
  std::optional<Rational> constant_value() const;
  /// Single term whose variables are all invertible (or a nonzero constant).
  bool is_unit() const;
  LaurentPoly unit_inverse() const;
  bool has_negative_exponents() const;
  bool involves(std::size_t var) const;

  /// Largest total degree among the terms; nullopt for zero.
  std::optional<int> degree() const;
  int max_exponent(std::size_t var) const;
  int min_exponent(std::size_t var) const;

  /// Largest term in grlex order. Requires a nonzero polynomial.
  const Exponents& leading_exponents() const;
  const Rational& leading_coefficient() const;
  Rational coefficient(const Exponents& e) const;

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const LaurentPoly& o);
  LaurentPoly& operator*=(const Rational& c);

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(LaurentPoly a, const Rational& c) { return a *= c; }
  friend LaurentPoly operator*(const Rational& c, LaurentPoly a) { return a *= c; }

  /// Non-negative powers always; negative powers of units only.
  LaurentPoly pow(int exponent) const;

  /// Adds c * x^e in place.
  void add_term(const Exponents& e, const Rational& c);

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b);

  std::string to_string() const;

 private:
  void check_same_ring(const LaurentPoly& o, const char* op) const;

  RingPtr ring_;
  TermMap terms_;
};

std::ostream& operator<<(std::ostream& os, const LaurentPoly& p);

LaurentPoly add(const LaurentPoly& p, const LaurentPoly& q);
LaurentPoly mul(const LaurentPoly& p, const LaurentPoly& q);
LaurentPoly neg(const LaurentPoly& p);

/// Formal partial derivative, d(x^n)/dx = n x^(n-1) for every integer n.
LaurentPoly partial_derivative(const LaurentPoly& p, std::size_t var);
LaurentPoly partial_derivative(const LaurentPoly& p, std::string_view var);

using Bindings = std::map<std::string, LaurentPoly, std::less<>>;

/// Simultaneous substitution. Images share one target ring; unbound
/// variables map to the same-named variable of the target ring. A negative
/// power needs a unit image.
LaurentPoly substitute(const LaurentPoly& p, const Bindings& bindings);
/// Same, with the target ring given explicitly (needed when bindings is empty).
LaurentPoly substitute(const LaurentPoly& p, const Bindings& bindings, const RingPtr& target);
/// Re-expresses p over `target`, matching variables by name.
LaurentPoly rebase(const LaurentPoly& p, const RingPtr& target);

using Assignment = std::map<std::string, Rational, std::less<>>;

/// Exact value at a point. Every variable occurring in p must be assigned;
/// invertible variables must be nonzero.
Rational evaluate(const LaurentPoly& p, const Assignment& point);
/// Values aligned with the ring's variable order.
Rational evaluate(const LaurentPoly& p, const std::vector<Rational>& values);

}  // namespace volform
