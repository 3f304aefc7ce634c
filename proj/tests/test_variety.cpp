#include <doctest.h>

#include <random>

#include "random.hpp"
#include "volform/error.hpp"
#include "volform/variety.hpp"

using namespace volform;

namespace {

ChartPtr surface() {
  auto r = Ring::make({"x", "y", "z"}, {true, true, false});
  auto x = LaurentPoly::variable(r, "x"), y = LaurentPoly::variable(r, "y"), z = LaurentPoly::variable(r, "z");
  return Chart::make(r, {{x + y + x * y * z - LaurentPoly::constant(r, 1), "z"}});
}

}  // namespace

TEST_CASE("normal form eliminates the solvable coordinate") {
  auto c = surface();
  CHECK(c->dimension() == 2);
  CHECK(c->is_solvable(2));
  auto x = c->variable("x"), y = c->variable("y"), z = c->variable("z");
  auto nz = c->normal_form(z);
  CHECK_FALSE(nz.involves(2));
  CHECK(c->normal_form(x * y * z) == c->constant(1) - x - y);
  CHECK(c->normal_form(x + y + x * y * z - c->constant(1)).is_zero());
  CHECK(c->normal_form(nz) == nz);
}

TEST_CASE("normal form is a ring homomorphism on random inputs") {
  std::mt19937 rng(21);
  auto c = surface();
  for (int trial = 0; trial < 50; ++trial) {
    auto p = volform::testing::random_poly(rng, c->ring(), {0, 1, 2});
    auto q = volform::testing::random_poly(rng, c->ring(), {0, 1, 2});
    CHECK(c->normal_form(p * q) == c->normal_form(c->normal_form(p) * c->normal_form(q)));
    CHECK(c->normal_form(p + q) == c->normal_form(p) + c->normal_form(q));
  }
}

TEST_CASE("non-triangular presentations are rejected") {
  auto r = Ring::make({"x", "y", "z"}, {false, false, false});
  auto x = LaurentPoly::variable(r, "x"), y = LaurentPoly::variable(r, "y"), z = LaurentPoly::variable(r, "z");
  CHECK_THROWS_AS(Chart::make(r, {{x + y + x * y * z - LaurentPoly::constant(r, 1), "z"}}), ChartError);
  CHECK_THROWS_AS(Chart::make(r, {{z * z - x, "z"}}), ChartError);
  CHECK_NOTHROW(Chart::make(r, {{z - x * y, "z"}}));
}

TEST_CASE("points are validated against relations and invertibility") {
  auto c = surface();
  CHECK_NOTHROW(Point(c, {Rational(1), Rational(1), Rational(-1)}));
  CHECK_THROWS_AS(Point(c, {Rational(1), Rational(1), Rational(0)}), ChartError);
  CHECK_THROWS_AS(Point(c, {Rational(0), Rational(1), Rational(0)}), ChartError);
  auto p = complete_point(c, {{"x", Rational(2)}, {"y", Rational(3)}});
  CHECK(p.at("z") == Rational(-4, 6));
  CHECK(sample_point(c, 7) == sample_point(c, 7));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto s = sample_point(c, seed);
    CHECK(on_chart(*c, s.values()));
  }
}

TEST_CASE("substitution actions are checked for ideal preservation and order") {
  auto c = surface();
  auto x = c->variable("x"), y = c->variable("y"), z = c->variable("z");
  auto swap = SubstitutionAction::make("swap", c, {{"x", y}, {"y", x}}, 2);
  CHECK(swap.apply(x * y) == x * y);
  CHECK(is_invariant(x + y, swap));
  CHECK_FALSE(is_invariant(x, swap));
  CHECK(swap.power(2).apply(x) == x);
  CHECK_THROWS(SubstitutionAction::make("bad", c, {{"x", -x}}, 2));
  CHECK_THROWS(SubstitutionAction::make("order", c, {{"x", y}, {"y", x}}, 3));
  (void)z;
}
