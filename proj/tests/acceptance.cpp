// Acceptance harness: one PASS/FAIL line per criterion. Every comparison is
// exact (rational arithmetic, tolerance 0).

#include <cstdio>
#include <exception>
#include <functional>
#include <random>
#include <string>

#include <json.hpp>

#include "oracles.hpp"
#include "process.hpp"
#include "random.hpp"
#include "schema_check.hpp"
#include "volform/avdp.hpp"
#include "volform/groups.hpp"
#include "volform/scenarios.hpp"

using namespace volform;
using namespace volform::avdp;

namespace {

constexpr int kSamplePoints = 20;
constexpr int kRandomGroupElements = 10;
constexpr int kRandomProducts = 20;
constexpr int kDivergenceCases = 50;
constexpr int kPropertyInstances = 100;
constexpr int kRoundtrips = 50;

int failures = 0;

void criterion(int id, const char* title, const std::function<std::string()>& body) {
  std::string why;
  try {
    why = body();
  } catch (const std::exception& e) {
    why = std::string("exception: ") + e.what();
  }
  std::printf("[%s] %02d %s%s%s\n", why.empty() ? "PASS" : "FAIL", id, title, why.empty() ? "" : " -- ",
              why.c_str());
  if (!why.empty()) ++failures;
}

Scenario surface(int px, int qy) {
  auto r = Ring::make({"x", "y"}, {false, false});
  return surface_S(LaurentPoly::variable(r, "x").pow(px), LaurentPoly::variable(r, "y").pow(qy));
}

Matrix m2(Rational a, Rational b, Rational c, Rational d) { return Matrix::from_rows({{a, b}, {c, d}}); }

Matrix random_sl2(std::mt19937& rng) {
  Matrix g = Matrix::identity(2);
  for (int k = 0; k < 4; ++k) {
    const Rational t = testing::nonzero_rational(rng);
    switch (rng() % 3) {
      case 0: g = g * m2(1, t, 0, 1); break;
      case 1: g = g * m2(1, 0, t, 1); break;
      default: g = g * m2(t, 0, 0, t.inverse()); break;
    }
  }
  return g;
}

DiffForm dscalar(const ChartPtr& c, const LaurentPoly& f) { return exterior_derivative(DiffForm::scalar(c, f)); }

}  // namespace

int main() {
  criterion(1, "bracket identity has zero residual on S(x,y), S(x^2,y^3) and SL2", [] {
    for (const auto& s : {surface(1, 1), surface(2, 3)}) {
      const auto& w = s.volume_form();
      for (auto [a, b] : {std::pair{"delta_z", "delta_y"}, std::pair{"delta_z", "delta_x"},
                          std::pair{"delta_y", "delta_x"}}) {
        if (!identity_one_residual(s.field(a), s.field(b), w).is_zero()) return s.name + " " + a + "," + b;
      }
    }
    auto g = sl2();
    return verify_identity_one(g.field("xi"), g.field("eta"), g.volume_form()) ? std::string() : std::string("sl2");
  });

  criterion(2, "bracket potential is exact and equals +-(1 + yz) on S(x,y)", [] {
    auto s = surface(1, 1);
    const auto& w = s.volume_form();
    auto g = bracket_potential(s.field("delta_z"), s.field("delta_y"), w);
    if (dscalar(s.chart, g) != theta(lie_bracket(s.field("delta_z"), s.field("delta_y")), w)) return std::string("d");
    auto t = s.chart->normal_form(s.chart->constant(1) + s.chart->variable("y") * s.chart->variable("z"));
    return g == t || g == -t ? std::string() : "potential " + g.to_string();
  });

  criterion(3, "z, y, x are potentials of delta_z, delta_y, delta_x for exactly one sign", [] {
    auto s = surface(1, 1);
    const auto& w = s.volume_form();
    for (auto [f, v] : {std::pair{"z", "delta_z"}, std::pair{"y", "delta_y"}, std::pair{"x", "delta_x"}}) {
      auto p = s.chart->variable(f);
      const int hits = verify_potential(p, s.field(v), w) + verify_potential(-p, s.field(v), w);
      auto c = matched_potential_sign(p, s.field(v), w);
      if (hits != 1 || !c || !verify_potential(Rational(*c) * p, s.field(v), w)) return std::string(v);
    }
    return std::string();
  });

  criterion(4, "kernels at degree 4 on S(x,y) are powers of the coordinate, confirmed by brute force", [] {
    auto s = surface(1, 1);
    std::mt19937 rng(4);
    auto pts = testing::surface_xy_points(rng, 70);
    for (auto [v, c] : {std::pair{"delta_z", "z"}, std::pair{"delta_y", "y"}, std::pair{"delta_x", "x"}}) {
      auto basis = kernel_basis(s.field(v), 4);
      if (basis.size() != 5) return std::string(v) + " dimension " + std::to_string(basis.size());
      if (testing::brute_force_kernel_dimension(s.field(v), 4, pts) != 5) return std::string(v) + " brute force";
      PolySpan span(s.chart->ring());
      for (const auto& g : basis) span.insert(g);
      for (int k = 0; k <= 4; ++k) {
        if (!span.contains(s.chart->normal_form(s.chart->variable(c).pow(k)))) return std::string(v) + " power";
      }
    }
    return std::string();
  });

  criterion(5, "semicompat(xi, eta, 2) on SL2 is FULL_RING", [] {
    auto g = sl2();
    auto v = semicompat_bounded(g.field("xi"), g.field("eta"), 2);
    return v.status == SemicompatStatus::FullRing ? std::string() : to_string(v.status);
  });

  criterion(6, "torus n = 2, 3: divergence-free, contraction omits a factor, condition A at 20 points", [] {
    for (int n : {2, 3}) {
      auto t = torus(n);
      const auto& w = t.volume_form();
      std::vector<FiberPair> pairs;
      for (int i = 1; i <= n; ++i) {
        const auto& nu = t.field("nu" + std::to_string(i));
        if (!divergence(nu, w).is_zero()) return "divergence nu" + std::to_string(i);
        auto c = theta(nu, w);
        const auto& omit = t.form("omit" + std::to_string(i));
        if (c != omit && c != -omit) return "contraction nu" + std::to_string(i);
        for (int j = i + 1; j <= n; ++j) pairs.push_back({nu, t.field("nu" + std::to_string(j)), t.chart->constant(1)});
      }
      for (int k = 0; k < kSamplePoints; ++k) {
        if (!condition_a_fiber(pairs, sample_point(t.chart, static_cast<std::uint64_t>(k)))) return t.name;
      }
    }
    return std::string();
  });

  criterion(7, "d(tau) equals the volume form on X_{m,1} for m = 2, 3", [] {
    for (int m : {2, 3}) {
      auto s = x_m1(m);
      if (exterior_derivative(s.form("tau")) != s.volume_form().form()) return s.name;
    }
    return std::string();
  });

  criterion(8, "sub-modular values: -1 at A0 on the torus algebra, 1 on sl2, multiplicative", [] {
    const Matrix e = m2(0, 1, 0, 0), f = m2(0, 0, 1, 0), h = m2(1, 0, 0, -1);
    if (submodular(m2(0, -1, 1, 0), {h}) != -1) return std::string("A0");
    std::mt19937 rng(8);
    for (int k = 0; k < kRandomGroupElements; ++k) {
      if (submodular(random_sl2(rng), {e, f, h}) != 1) return std::string("sl2 element");
    }
    auto borel = [&] {
      return m2(testing::nonzero_rational(rng), testing::small_rational(rng), 0, testing::nonzero_rational(rng));
    };
    for (int k = 0; k < kRandomProducts; ++k) {
      auto a = borel(), b = borel();
      if (submodular(a * b, {e}) != submodular(a, {e}) * submodular(b, {e})) return std::string("borel product");
      // words in A0 and diag(t, 1/t) normalize the torus algebra
      auto word = [&] {
        Matrix w = Matrix::identity(2);
        for (int i = 0; i < 3; ++i) {
          const Rational t = testing::nonzero_rational(rng);
          w = w * (rng() % 2 ? m2(0, -1, 1, 0) : m2(t, 0, 0, t.inverse()));
        }
        return w;
      };
      auto g1 = word(), g2 = word();
      if (submodular(g1 * g2, {h}) != submodular(g1, {h}) * submodular(g2, {h})) return std::string("torus product");
    }
    return std::string();
  });

  criterion(9, "flow jacobian of b1 xi on SL2 at b1 = 0 is I + xi grad(b1)^T", [] {
    auto g = sl2();
    auto b1 = g.chart->variable("b1");
    auto chk = check_formula3(g.field("xi"), b1, g.points.front().second);
    Matrix oracle = Matrix::identity(3);
    oracle(1, 2) = 1;
    if (chk.jacobian != oracle) return "jacobian " + chk.jacobian.to_string();
    return chk.holds() ? std::string() : std::string("expected side");
  });

  criterion(10, "divergence(f nu) = nu(f) for 50 random cases on torus(2) and S(x,y)", [] {
    std::mt19937 rng(10);
    for (const auto& s : {torus(2), surface(1, 1)}) {
      const auto& w = s.volume_form();
      for (int t = 0; t < kDivergenceCases; ++t) {
        auto nu = psi(testing::random_function(rng, *s.chart), w);
        auto f = testing::random_function(rng, *s.chart);
        if (!divergence(nu, w).is_zero()) return s.name + " psi";
        if (divergence(f * nu, w) != nu.apply(f)) return s.name + " case " + std::to_string(t);
      }
    }
    return std::string();
  });

  criterion(11, "d^2, i^2, Cartan, bracket contraction, Leibniz, Jacobi on 100 instances per chart", [] {
    std::mt19937 rng(11);
    auto surf = surface(1, 1);
    for (const auto& s : {torus(2), surf, sl2(), x_m1(2)}) {
      const int n = static_cast<int>(s.chart->dimension());
      for (int t = 0; t < kPropertyInstances; ++t) {
        auto a = testing::random_form(rng, s.chart, t % n, 2);
        auto b = testing::random_form(rng, s.chart, 1, 2);
        auto xi = testing::random_field(rng, s.chart, 2), eta = testing::random_field(rng, s.chart, 2),
             zeta = testing::random_field(rng, s.chart, 2);
        const Rational sg = t % n % 2 ? Rational(-1) : Rational(1);
        if (!exterior_derivative(exterior_derivative(a)).is_zero()) return s.name + " d^2";
        if (!interior_product(xi, interior_product(xi, b)).is_zero() ||
            !interior_product(xi, interior_product(xi, wedge(a, b))).is_zero())
          return s.name + " i^2";
        auto f = testing::random_function(rng, *s.chart), g = testing::random_function(rng, *s.chart, 2);
        auto fdg = f * dscalar(s.chart, g);
        auto by_rule = xi.apply(f) * dscalar(s.chart, g) + f * dscalar(s.chart, xi.apply(g));
        if (lie_derivative(xi, fdg) != by_rule ||
            lie_derivative(xi, a) != exterior_derivative(interior_product(xi, a)) +
                                         interior_product(xi, exterior_derivative(a)))
          return s.name + " Cartan";
        if (interior_product(lie_bracket(xi, eta), b) !=
            lie_derivative(xi, interior_product(eta, b)) - interior_product(eta, lie_derivative(xi, b)))
          return s.name + " bracket contraction";
        if (exterior_derivative(wedge(a, b)) !=
            wedge(exterior_derivative(a), b) + sg * wedge(a, exterior_derivative(b)))
          return s.name + " Leibniz";
        if (!(lie_bracket(xi, lie_bracket(eta, zeta)) + lie_bracket(eta, lie_bracket(zeta, xi)) +
              lie_bracket(zeta, lie_bracket(xi, eta)))
                 .is_zero())
          return s.name + " Jacobi";
      }
    }
    return std::string();
  });

  criterion(12, "decomposition roundtrip on 50 random sets with N <= 4; xyz = 1 - x - y", [] {
    auto s = surface(1, 1);
    auto d = formula4_decompose(s.chart->variable("x") * s.chart->variable("y") * s.chart->variable("z"), s.chart);
    auto want = make_decomposition(1);
    want.a0 = 1;
    want.a[0] = -1;
    want.b[0] = -1;
    if (!(d == want)) return "xyz -> " + d.to_string();
    std::mt19937 rng(12);
    for (int t = 0; t < kRoundtrips; ++t) {
      auto r = make_decomposition(1 + t % 4);
      auto draw = [&] { return rng() % 3 == 0 ? Rational(0) : testing::small_rational(rng); };
      r.a0 = draw();
      for (auto* v : {&r.a, &r.b, &r.c})
        for (auto& x : *v) x = draw();
      for (auto* m : {&r.aa, &r.bb, &r.cc})
        for (auto& row : *m)
          for (auto& x : row) x = draw();
      if (!(formula4_decompose(formula4_reconstruct(r, s.chart), s.chart) == r)) return "roundtrip " + r.to_string();
    }
    return std::string();
  });

  criterion(13, "torus fields invariant under z -> -z; product example invariant under the diagonal action", [] {
    for (int n : {1, 2, 3}) {
      auto t = torus(n);
      for (int i = 1; i <= n; ++i) {
        if (!is_invariant(t.field("nu" + std::to_string(i)), t.action("neg"))) return t.name;
      }
    }
    auto s = gamma_example();
    const auto& act = s.action("gamma_neg");
    for (const char* f : {"xi1", "xi2", "xi3", "nu1", "zxi4"}) {
      if (!is_invariant(s.field(f), act)) return std::string(f);
    }
    if (!is_invariant(theta(s.field("xi4"), s.volume_form()), act)) return std::string("iota(xi4, w)");
    return std::string();
  });

  criterion(14, "CLI: surface json report exits 0 and validates; corrupted potential exits 1", [] {
    auto r = testing::run_cli("check surface:p=x,q=y --format json");
    if (r.exit_code != 0) return "exit " + std::to_string(r.exit_code);
    auto v = testing::schema_violations(nlohmann::json::parse(testing::slurp(VOLFORM_SCHEMA)),
                                        nlohmann::json::parse(r.out));
    if (!v.empty()) return v.front();
    auto bad = testing::run_cli(std::string("check '") + VOLFORM_DOCS + "/corrupted_potential.vf'");
    return bad.exit_code == 1 ? std::string() : "corrupted exit " + std::to_string(bad.exit_code);
  });

  std::printf("%d of 14 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
