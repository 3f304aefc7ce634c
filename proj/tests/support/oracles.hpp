#pragma once

#include <random>
#include <vector>

#include "volform/calculus.hpp"
#include "volform/linalg.hpp"

namespace volform::testing {

/// d(monomial)/d(x_var) evaluated termwise at a point.
inline Rational partial_at(const LaurentPoly& p, std::size_t var, const std::vector<Rational>& pt) {
  Rational total;
  for (const auto& [e, c] : p.terms()) {
    if (e[var] == 0) continue;
    Rational term = c * Rational(e[var]);
    for (std::size_t i = 0; i < e.size(); ++i) term *= pt[i].pow(i == var ? e[i] - 1 : e[i]);
    total += term;
  }
  return total;
}

inline Rational value_at(const LaurentPoly& p, const std::vector<Rational>& pt) {
  Rational total;
  for (const auto& [e, c] : p.terms()) {
    Rational term = c;
    for (std::size_t i = 0; i < e.size(); ++i) term *= pt[i].pow(e[i]);
    total += term;
  }
  return total;
}

/// xi(f) at a point by the chain rule over the ambient coordinates.
inline Rational apply_at(const VectorField& xi, const LaurentPoly& f, const std::vector<Rational>& pt) {
  Rational total;
  for (std::size_t i = 0; i < pt.size(); ++i) total += value_at(xi.coefficient(i), pt) * partial_at(f, i, pt);
  return total;
}

/// Points of p(x) + q(y) + x y z = 1 with p = x, q = y.
inline std::vector<std::vector<Rational>> surface_xy_points(std::mt19937& rng, std::size_t count) {
  std::uniform_int_distribution<int> num(-40, 40), den(1, 7);
  std::vector<std::vector<Rational>> out;
  while (out.size() < count) {
    Rational x(num(rng), den(rng)), y(num(rng), den(rng));
    if (x.is_zero() || y.is_zero()) continue;
    out.push_back({x, y, (Rational(1) - x - y) / (x * y)});
  }
  return out;
}

/// All exponent vectors in n variables with total degree <= bound.
inline std::vector<Exponents> exponents_up_to(std::size_t n, int bound) {
  std::vector<Exponents> out;
  Exponents e(n, 0);
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i == n) {
      out.push_back(e);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      e[i] = k;
      self(self, i + 1, left - k);
    }
    e[i] = 0;
  };
  rec(rec, 0, bound);
  return out;
}

/// dim { f in span of ambient monomials of degree <= bound, as functions on
/// the sample points : xi(f) = 0 }, by evaluation ranks.
inline std::size_t brute_force_kernel_dimension(const VectorField& xi, int bound,
                                                const std::vector<std::vector<Rational>>& points) {
  const auto ring = xi.chart()->ring();
  const auto exps = exponents_up_to(ring->size(), bound);
  Matrix values(points.size(), exps.size()), derivs(points.size(), exps.size());
  for (std::size_t m = 0; m < exps.size(); ++m) {
    auto mono = LaurentPoly::monomial(ring, exps[m]);
    for (std::size_t k = 0; k < points.size(); ++k) {
      values(k, m) = value_at(mono, points[k]);
      derivs(k, m) = apply_at(xi, mono, points[k]);
    }
  }
  return rank(values) - rank(derivs);
}

}  // namespace volform::testing
