#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "random.hpp"
#include "volform/error.hpp"
#include "volform/linalg.hpp"

using namespace volform;
using volform::testing::nonzero_rational;
using volform::testing::random_poly;
using volform::testing::small_rational;

namespace {

RingPtr xyz() { return Ring::make({"x", "y", "z"}, {true, false, false}); }

// Leibniz expansion over permutations.
Rational leibniz_det(const Matrix& m) {
  std::vector<std::size_t> perm(m.rows());
  std::iota(perm.begin(), perm.end(), 0);
  Rational total;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
      for (std::size_t j = i + 1; j < perm.size(); ++j) inversions += perm[i] > perm[j];
    Rational term = inversions % 2 ? Rational(-1) : Rational(1);
    for (std::size_t i = 0; i < perm.size(); ++i) term *= m(i, perm[i]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

Matrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c) {
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rng() % 3 == 0 ? Rational(0) : small_rational(rng);
  return m;
}

}  // namespace

TEST_CASE("rational arithmetic is exact and canonical") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(1, -2).denominator() == 2);
  CHECK(Rational::parse("-3/6") == Rational(-1, 2));
  CHECK(Rational::parse("7") == Rational(7));
  CHECK(Rational(2, 3).pow(-2) == Rational(9, 4));
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK_THROWS(Rational(0).inverse());
  CHECK_THROWS(Rational::parse("1/0"));
  CHECK_THROWS(Rational::parse("x"));
  CHECK(Rational(-1, 3) < Rational(0));
}

TEST_CASE("laurent polynomials keep grlex order and reject negative powers of non-units") {
  auto r = xyz();
  auto x = LaurentPoly::variable(r, "x"), y = LaurentPoly::variable(r, "y");
  auto p = x * y + y * y + LaurentPoly::constant(r, 3);
  CHECK(p.leading_exponents() == Exponents{1, 1, 0});
  CHECK(p.to_string() == "x*y + y^2 + 3");
  CHECK(x.pow(-2) * x.pow(2) == LaurentPoly::constant(r, 1));
  CHECK(x.pow(-1).is_unit());
  CHECK_FALSE((x + y).is_unit());
  CHECK_THROWS_AS(y.pow(-1), DomainError);
  CHECK((p - p).is_zero());
  CHECK(partial_derivative(x.pow(-1) * y, "x") == -(x.pow(-2) * y));
}

TEST_CASE("ring mismatch is reported") {
  auto a = xyz();
  auto b = Ring::make({"x", "y"}, {false, false});
  CHECK_THROWS_AS(LaurentPoly::variable(a, "x") + LaurentPoly::variable(b, "x"), VariableMismatch);
  CHECK_THROWS_AS(LaurentPoly::variable(a, "q"), UnknownVariable);
}

TEST_CASE("ring operations agree with pointwise evaluation") {
  std::mt19937 rng(11);
  auto r = xyz();
  const std::vector<std::size_t> vars{0, 1, 2};
  for (int trial = 0; trial < 200; ++trial) {
    auto p = random_poly(rng, r, vars) * LaurentPoly::variable(r, "x").pow(-static_cast<int>(rng() % 2));
    auto q = random_poly(rng, r, vars);
    std::vector<Rational> pt{nonzero_rational(rng), small_rational(rng), small_rational(rng)};
    const Rational pv = evaluate(p, pt), qv = evaluate(q, pt);
    CHECK(evaluate(p + q, pt) == pv + qv);
    CHECK(evaluate(p - q, pt) == pv - qv);
    CHECK(evaluate(p * q, pt) == pv * qv);
    CHECK(evaluate(q.pow(3), pt) == qv.pow(3));
    CHECK(p * (q + q) == p * q + p * q);
  }
}

TEST_CASE("substitution is composition of evaluations") {
  std::mt19937 rng(12);
  auto r = xyz();
  auto x = LaurentPoly::variable(r, "x"), y = LaurentPoly::variable(r, "y"), z = LaurentPoly::variable(r, "z");
  Bindings b{{"x", -x}, {"y", y + z * z}, {"z", x * y}};
  for (int trial = 0; trial < 50; ++trial) {
    auto p = random_poly(rng, r, {0, 1, 2});
    std::vector<Rational> pt{nonzero_rational(rng), small_rational(rng), small_rational(rng)};
    std::vector<Rational> image{-pt[0], pt[1] + pt[2] * pt[2], pt[0] * pt[1]};
    CHECK(evaluate(substitute(p, b), pt) == evaluate(p, image));
  }
}

TEST_CASE("determinant matches the permutation expansion") {
  std::mt19937 rng(13);
  for (std::size_t n = 1; n <= 5; ++n) {
    for (int trial = 0; trial < 20; ++trial) {
      auto m = random_matrix(rng, n, n);
      CHECK(determinant(m) == leibniz_det(m));
    }
  }
}

TEST_CASE("inverse, nullspace and solve are consistent") {
  std::mt19937 rng(14);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + rng() % 4;
    auto m = random_matrix(rng, n, n);
    auto inv = inverse(m);
    CHECK(inv.has_value() == !determinant(m).is_zero());
    if (inv) CHECK(m * *inv == Matrix::identity(n));

    auto wide = random_matrix(rng, n, n + 2);
    auto ns = nullspace(wide);
    CHECK(ns.size() + rank(wide) == n + 2);
    for (const auto& v : ns) {
      for (std::size_t i = 0; i < n; ++i) {
        Rational s;
        for (std::size_t j = 0; j < n + 2; ++j) s += wide(i, j) * v[j];
        CHECK(s.is_zero());
      }
    }

    std::vector<Rational> x0(n + 2);
    for (auto& v : x0) v = small_rational(rng);
    std::vector<Rational> b(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n + 2; ++j) b[i] += wide(i, j) * x0[j];
    auto sol = solve(wide, b);
    REQUIRE(sol.has_value());
    for (std::size_t i = 0; i < n; ++i) {
      Rational s;
      for (std::size_t j = 0; j < n + 2; ++j) s += wide(i, j) * (*sol)[j];
      CHECK(s == b[i]);
    }
  }
  CHECK_FALSE(solve(Matrix::from_rows({{1, 1}, {1, 1}}), std::vector<Rational>{1, 2}).has_value());
}

TEST_CASE("polynomial span membership is exact") {
  auto r = xyz();
  auto x = LaurentPoly::variable(r, "x"), y = LaurentPoly::variable(r, "y");
  PolySpan s(r);
  CHECK(s.insert(x + y));
  CHECK(s.insert(x - y));
  CHECK_FALSE(s.insert(x));
  CHECK(s.contains(Rational(3) * y));
  CHECK_FALSE(s.contains(x * y));
  CHECK(s.dimension() == 2);
  auto basis = s.basis();
  REQUIRE(basis.size() == 2);
  CHECK(basis[0] == x);
  CHECK(basis[1] == y);
}
