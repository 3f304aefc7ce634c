#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "random.hpp"
#include "volform/avdp.hpp"
#include "volform/error.hpp"
#include "volform/scenarios.hpp"

using namespace volform;
using namespace volform::avdp;
using volform::testing::apply_at;
using volform::testing::small_rational;

namespace {

Scenario surface_xy() {
  auto r = Ring::make({"x", "y"}, {false, false});
  return surface_S(LaurentPoly::variable(r, "x"), LaurentPoly::variable(r, "y"));
}

Scenario surface_x2y3() {
  auto r = Ring::make({"x", "y"}, {false, false});
  return surface_S(LaurentPoly::variable(r, "x").pow(2), LaurentPoly::variable(r, "y").pow(3));
}

}  // namespace

TEST_CASE("identity one holds on the surfaces and SL2") {
  for (const auto& s : {surface_xy(), surface_x2y3()}) {
    const auto& w = s.volume_form();
    CHECK(identity_one_residual(s.field("delta_z"), s.field("delta_y"), w).is_zero());
    CHECK(identity_one_residual(s.field("delta_z"), s.field("delta_x"), w).is_zero());
    CHECK(identity_one_residual(s.field("delta_y"), s.field("delta_x"), w).is_zero());
  }
  auto g = sl2();
  CHECK(verify_identity_one(g.field("xi"), g.field("eta"), g.volume_form()));
}

TEST_CASE("identity one rejects fields with nonzero divergence") {
  auto t = torus(2);
  auto f = t.chart->variable("z1");
  CHECK_THROWS_AS(identity_one_residual(f * t.field("nu1"), t.field("nu2"), t.volume_form()), PreconditionError);
}

TEST_CASE("bracket potential on the surface is 1 + yz up to sign") {
  auto s = surface_xy();
  const auto& w = s.volume_form();
  const auto& dz = s.field("delta_z");
  const auto& dy = s.field("delta_y");
  auto g = bracket_potential(dz, dy, w);
  auto target = s.chart->normal_form(s.chart->constant(1) + s.chart->variable("y") * s.chart->variable("z"));
  CHECK((g == target || g == -target));
  CHECK(exterior_derivative(DiffForm::scalar(s.chart, g)) == theta(lie_bracket(dz, dy), w));
}

TEST_CASE("potentials of the coordinate fields have exactly one sign") {
  auto s = surface_xy();
  const auto& w = s.volume_form();
  for (auto [f, field] : {std::pair{"z", "delta_z"}, std::pair{"y", "delta_y"}, std::pair{"x", "delta_x"}}) {
    auto p = s.chart->variable(f);
    const int plus = verify_potential(p, s.field(field), w);
    const int minus = verify_potential(-p, s.field(field), w);
    CHECK(plus + minus == 1);
    auto c = matched_potential_sign(p, s.field(field), w);
    REQUIRE(c.has_value());
    CHECK(verify_potential(Rational(*c) * p, s.field(field), w));
  }
  CHECK_FALSE(matched_potential_sign(s.chart->variable("z").pow(2), s.field("delta_z"), w).has_value());
  CHECK_FALSE(potential_residual(s.chart->variable("z").pow(2), s.field("delta_z"), w).is_zero());
}

TEST_CASE("psi inverts theta on exact forms") {
  auto s = surface_xy();
  const auto& w = s.volume_form();
  std::mt19937 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    auto f = volform::testing::random_function(rng, *s.chart);
    auto v = psi(f, w);
    CHECK(theta(v, w) == exterior_derivative(DiffForm::scalar(s.chart, f)));
    CHECK(divergence(v, w).is_zero());
  }
}

TEST_CASE("kernels on the surface match a brute-force evaluation solve") {
  auto s = surface_xy();
  std::mt19937 rng(32);
  auto pts = volform::testing::surface_xy_points(rng, 70);
  for (auto [name, coord] : {std::pair{"delta_z", "z"}, std::pair{"delta_y", "y"}, std::pair{"delta_x", "x"}}) {
    const auto& xi = s.field(name);
    auto basis = kernel_basis(xi, 4);
    CHECK(basis.size() == 5);
    CHECK(volform::testing::brute_force_kernel_dimension(xi, 4, pts) == 5);
    for (const auto& g : basis) {
      for (const auto& p : pts) CHECK(apply_at(xi, g, p).is_zero());
    }
    PolySpan span(s.chart->ring());
    for (const auto& g : basis) span.insert(g);
    for (int k = 0; k <= 4; ++k) CHECK(span.contains(s.chart->normal_form(s.chart->variable(coord).pow(k))));
  }
}

TEST_CASE("truncated ring dimension matches evaluation rank") {
  auto s = surface_xy();
  std::mt19937 rng(33);
  auto pts = volform::testing::surface_xy_points(rng, 50);
  for (int d = 0; d <= 3; ++d) {
    auto exps = volform::testing::exponents_up_to(3, d);
    Matrix m(pts.size(), exps.size());
    for (std::size_t j = 0; j < exps.size(); ++j)
      for (std::size_t k = 0; k < pts.size(); ++k)
        m(k, j) = volform::testing::value_at(LaurentPoly::monomial(s.chart->ring(), exps[j]), pts[k]);
    CHECK(truncated_basis(*s.chart, d).size() == rank(m));
    CHECK(ambient_monomials(*s.chart, d).size() == exps.size());
  }
}

TEST_CASE("semicompat on SL2 reaches the full ring") {
  auto g = sl2();
  const auto& xi = g.field("xi");
  const auto& eta = g.field("eta");
  for (const char* b : {"b1", "b2"}) CHECK(xi.apply(g.chart->variable(b)).is_zero());
  for (const char* a : {"a1", "a2"}) CHECK(eta.apply(g.chart->variable(a)).is_zero());
  auto v = semicompat_bounded(xi, eta, 2);
  CHECK(v.status == SemicompatStatus::FullRing);
  CHECK(to_string(v.status) == "FULL_RING");
  REQUIRE(v.witness.has_value());
  CHECK(*v.witness == g.chart->constant(1));
}

TEST_CASE("semicompat of a field with itself is never full") {
  auto t = torus(2);
  auto v = semicompat_bounded(t.field("nu1"), t.field("nu1"), 2);
  CHECK(v.status != SemicompatStatus::FullRing);
}

TEST_CASE("condition A on the torus spans the wedge square") {
  for (int n : {2, 3}) {
    auto t = torus(n);
    std::vector<FiberPair> pairs;
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j)
        pairs.push_back({t.field("nu" + std::to_string(i)), t.field("nu" + std::to_string(j)), t.chart->constant(1)});
    for (std::uint64_t k = 0; k < 20; ++k) {
      auto p = sample_point(t.chart, k);
      CHECK(wedge_span_rank(pairs, p) == static_cast<std::size_t>(n * (n - 1) / 2));
      CHECK(condition_a_fiber(pairs, p));
    }
  }
  auto t = torus(3);
  std::vector<FiberPair> one{{t.field("nu1"), t.field("nu2"), t.chart->constant(1)}};
  CHECK_FALSE(condition_a_fiber(one, sample_point(t.chart, 1)));
}

TEST_CASE("flow jacobian of b1 xi on SL2 is the identity plus a rank-one term") {
  auto g = sl2();
  const auto& xi = g.field("xi");
  auto b1 = g.chart->variable("b1");
  std::mt19937 rng(34);
  for (int trial = 0; trial < 10; ++trial) {
    const Rational a1 = volform::testing::nonzero_rational(rng), a2 = small_rational(rng);
    Point p(g.chart, {a1, a2, Rational(0), a1.inverse()});
    auto chk = check_formula3(xi, b1, p);
    // free coordinates (a1, a2, b1); flow a2 -> a2 + b1 (1 + a2 b1) / a1
    Matrix oracle = Matrix::identity(3);
    oracle(1, 2) = a1.inverse();
    CHECK(chk.jacobian == oracle);
    CHECK(chk.expected == oracle);
    CHECK(chk.holds());
  }
  CHECK(verify_formula3(xi, b1, g.points.front().second));
  CHECK_THROWS_AS(check_formula3(xi, g.chart->variable("a1"), g.points.front().second), PreconditionError);
}

TEST_CASE("decomposition of xyz on the surface") {
  auto s = surface_xy();
  auto d = formula4_decompose(s.chart->variable("x") * s.chart->variable("y") * s.chart->variable("z"), s.chart);
  auto expected = make_decomposition(1);
  expected.a0 = 1;
  expected.a[0] = -1;
  expected.b[0] = -1;
  CHECK(d.trimmed() == expected);
}

TEST_CASE("decomposition agrees on ambient and normal-form inputs") {
  auto s = surface_x2y3();
  std::mt19937 rng(35);
  for (int trial = 0; trial < 20; ++trial) {
    auto f = volform::testing::random_poly(rng, s.chart->ring(), {0, 1, 2}, 3, 3);
    auto d = formula4_decompose(f, s.chart);
    CHECK(formula4_decompose(s.chart->normal_form(f), s.chart) == d);
    CHECK(s.chart->normal_form(formula4_reconstruct(d, s.chart)) == s.chart->normal_form(f));
  }
}

TEST_CASE("surface_data rejects other charts") {
  CHECK_THROWS_AS(surface_data(sl2().chart), PreconditionError);
  auto d = surface_data(surface_x2y3().chart);
  CHECK(d.p.to_string() == "x^2");
}
