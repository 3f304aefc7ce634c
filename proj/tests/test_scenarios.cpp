#include <doctest.h>

#include "volform/avdp.hpp"
#include "volform/error.hpp"
#include "volform/scenarios.hpp"

using namespace volform;

TEST_CASE("torus contractions omit one factor up to sign") {
  for (int n : {2, 3}) {
    auto t = torus(n);
    const auto& w = t.volume_form();
    for (int i = 1; i <= n; ++i) {
      const auto& nu = t.field("nu" + std::to_string(i));
      CHECK(divergence(nu, w).is_zero());
      std::vector<std::string> rest;
      LaurentPoly density = t.chart->constant(1);
      for (int j = 1; j <= n; ++j) {
        if (j == i) continue;
        rest.push_back("z" + std::to_string(j));
        density *= t.chart->variable("z" + std::to_string(j)).pow(-1);
      }
      auto omit = DiffForm::basis(t.chart, rest, density);
      CHECK(t.form("omit" + std::to_string(i)) == omit);
      auto c = theta(nu, w);
      const Rational sign = (i - 1) % 2 ? Rational(-1) : Rational(1);
      CHECK(c == sign * omit);
    }
  }
}

TEST_CASE("torus exactness fields have their primitives") {
  auto t = torus(2);
  const auto& w = t.volume_form();
  for (const char* tag : {"1_2", "2_1"}) {
    const auto& nu = t.field(std::string("nu") + tag);
    CHECK(exterior_derivative(t.form(std::string("tau") + tag)) == theta(nu, w));
  }
  CHECK_THROWS_AS(exactness_field(t.field("nu1"), t.field("nu2"), t.chart->variable("z2"), w), PreconditionError);
}

TEST_CASE("X_m1 primitive of the volume form") {
  for (int m : {2, 3, 4}) {
    auto s = x_m1(m);
    CHECK(exterior_derivative(s.form("tau")) == s.volume_form().form());
    for (const char* f : {"lnd1", "lnd2"}) {
      CHECK(divergence(s.field(f), s.volume_form()).is_zero());
      CHECK_NOTHROW(lnd_flow(s.field(f), s.chart->constant(1)));
    }
  }
  CHECK_THROWS_AS(x_m1(1).form("tau"), Error);
  CHECK_THROWS_AS(x_m1(0), PreconditionError);
}

TEST_CASE("quadric fields and the gamma action") {
  auto q = quadric();
  const auto& g = q.action("gamma");
  for (const char* f : {"xi1", "xi2", "xi3"}) CHECK(is_invariant(q.field(f), g));
  CHECK_FALSE(is_invariant(q.field("xi4"), g));
  CHECK(avdp::matched_potential_sign(q.chart->variable("x").pow(2), q.field("xi4"), q.volume_form()).has_value());
}

TEST_CASE("the product example is invariant under the diagonal action") {
  auto s = gamma_example();
  const auto& diag = s.action("gamma_neg");
  CHECK(diag.order() == 2);
  for (const char* f : {"xi1", "xi2", "xi3", "nu1", "zxi4"}) CHECK(is_invariant(s.field(f), diag));
  CHECK_FALSE(is_invariant(s.field("xi4"), diag));
  CHECK(character(s.volume_form().form(), diag) == Rational(-1));
  CHECK(is_invariant(s.form("omit1"), s.action("neg")));
  for (const char* f : {"xi1", "xi2", "xi3", "xi4", "nu1", "zxi4"})
    CHECK(divergence(s.field(f), s.volume_form()).is_zero());
}

TEST_CASE("product renames clashing names and multiplies volumes") {
  auto p = product(torus(1), torus(1));
  CHECK(p.chart->dimension() == 2);
  CHECK(p.chart->ring()->names() == std::vector<std::string>{"z1", "z1_2"});
  CHECK_NOTHROW(p.field("nu1_2"));
  CHECK_NOTHROW(p.action("neg_2"));
  CHECK_NOTHROW(p.action("neg_neg_2"));
  auto z = p.chart->variable("z1"), z2 = p.chart->variable("z1_2");
  CHECK(p.volume_form().density() == z.pow(-1) * z2.pow(-1));
  CHECK(lie_bracket(p.field("nu1"), p.field("nu1_2")).is_zero());
}

TEST_CASE("product is associative up to naming") {
  auto a = sl2(), b = torus(1), c = quadric();
  auto left = product(product(a, b), c);
  auto right = product(a, product(b, c));
  CHECK(left.chart->ring()->names() == right.chart->ring()->names());
  CHECK(left.chart->dimension() == right.chart->dimension());
  CHECK(left.volume_form().form().to_string() == right.volume_form().form().to_string());
  CHECK(left.fields.size() == right.fields.size());
  for (std::size_t i = 0; i < left.fields.size(); ++i) {
    CHECK(left.fields[i].first == right.fields[i].first);
    CHECK(left.fields[i].second.to_string() == right.fields[i].second.to_string());
  }
}

TEST_CASE("unknown names raise") {
  auto t = torus(2);
  CHECK_THROWS_AS(t.field("nope"), Error);
  CHECK_THROWS_AS(t.form("nope"), Error);
  CHECK_THROWS_AS(t.action("nope"), Error);
  CHECK(t.form("w") == t.volume_form().form());
}
