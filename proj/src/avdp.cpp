#include "volform/avdp.hpp"

#include <algorithm>
#include <sstream>

#include "volform/error.hpp"

namespace volform::avdp {

namespace {

void require_divergence_free(const VectorField& v, const VolumeForm& w, const char* which) {
  if (!divergence(v, w).is_zero()) {
    throw PreconditionError(std::string(which) + " is not divergence-free: " + v.to_string());
  }
}

void require_surface(const ChartPtr& chart) {
  if (chart->dimension() != 2) {
    throw PreconditionError("surface operation on a chart of dimension " + std::to_string(chart->dimension()));
  }
}

// Coefficient vectors of `polys` over the union of their monomials.
Matrix coefficient_matrix(const std::vector<LaurentPoly>& polys) {
  std::map<Exponents, std::size_t, GrLexLess> rows;
  for (const auto& p : polys) {
    for (const auto& [e, c] : p.terms()) rows.try_emplace(e, 0);
  }
  std::size_t r = 0;
  for (auto& [e, idx] : rows) idx = r++;
  Matrix m(rows.size(), polys.size());
  for (std::size_t j = 0; j < polys.size(); ++j) {
    for (const auto& [e, c] : polys[j].terms()) m(rows.at(e), j) = c;
  }
  return m;
}

LaurentPoly combine(const RingPtr& ring, const std::vector<LaurentPoly>& polys, const std::vector<Rational>& coeffs) {
  LaurentPoly r(ring);
  for (std::size_t k = 0; k < polys.size(); ++k) {
    if (!coeffs[k].is_zero()) r += polys[k] * coeffs[k];
  }
  return r;
}

// Echelon basis of the combinations sum c_k polys[k] with sum c_k images[k] = 0.
std::vector<LaurentPoly> combination_kernel(const RingPtr& ring, const std::vector<LaurentPoly>& polys,
                                            const std::vector<LaurentPoly>& images) {
  PolySpan span(ring);
  for (const auto& v : nullspace(coefficient_matrix(images))) span.insert(combine(ring, polys, v));
  return span.basis();
}

void monomials_rec(std::size_t n, int remaining, Exponents& e, std::size_t i, std::vector<Exponents>& out) {
  if (i == n) {
    out.push_back(e);
    return;
  }
  for (int k = 0; k <= remaining; ++k) {
    e[i] = k;
    monomials_rec(n, remaining - k, e, i + 1, out);
  }
  e[i] = 0;
}

}  // namespace

// ---------------------------------------------------------------- bracket identity

DiffForm identity_one_residual(const VectorField& xi, const VectorField& eta, const VolumeForm& w) {
  require_divergence_free(xi, w, "first field");
  require_divergence_free(eta, w, "second field");
  DiffForm lhs = theta(lie_bracket(xi, eta), w);
  DiffForm rhs = exterior_derivative(interior_product(xi, interior_product(eta, w.form())));
  return lhs - rhs;
}

bool verify_identity_one(const VectorField& xi, const VectorField& eta, const VolumeForm& w) {
  return identity_one_residual(xi, eta, w).is_zero();
}

// ---------------------------------------------------------------- kernels

std::vector<LaurentPoly> ambient_monomials(const Chart& chart, int bound) {
  std::vector<Exponents> exps;
  Exponents e(chart.ambient_dimension(), 0);
  if (bound >= 0) monomials_rec(e.size(), bound, e, 0, exps);
  std::sort(exps.begin(), exps.end(), GrLexLess{});
  std::vector<LaurentPoly> out;
  out.reserve(exps.size());
  for (auto& x : exps) out.push_back(LaurentPoly::monomial(chart.ring(), std::move(x)));
  return out;
}

std::vector<LaurentPoly> truncated_basis(const Chart& chart, int bound) {
  PolySpan span(chart.ring());
  for (const auto& m : ambient_monomials(chart, bound)) span.insert(chart.normal_form(m));
  return span.basis();
}

std::vector<LaurentPoly> kernel_basis(const VectorField& xi, int degree_bound) {
  const auto& chart = *xi.chart();
  auto basis = truncated_basis(chart, degree_bound);
  std::vector<LaurentPoly> images;
  images.reserve(basis.size());
  for (const auto& g : basis) images.push_back(xi.apply(g));
  return combination_kernel(chart.ring(), basis, images);
}

std::string to_string(SemicompatStatus s) {
  switch (s) {
    case SemicompatStatus::FullRing: return "FULL_RING";
    case SemicompatStatus::IdealWitness: return "IDEAL_WITNESS";
    case SemicompatStatus::Unknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

SemicompatVerdict semicompat_bounded(const VectorField& xi, const VectorField& eta, int degree_bound) {
  if (xi.chart() != eta.chart()) throw VariableMismatch("fields live on different charts");
  const auto& chart = *xi.chart();
  SemicompatVerdict verdict;
  verdict.degree_bound = degree_bound;

  auto kx = kernel_basis(xi, degree_bound);
  auto ky = kernel_basis(eta, degree_bound);
  PolySpan products(chart.ring());
  for (const auto& a : kx) {
    for (const auto& b : ky) products.insert(chart.normal_form(a * b));
  }

  auto ring_basis = truncated_basis(chart, degree_bound);
  if (std::all_of(ring_basis.begin(), ring_basis.end(), [&](const auto& g) { return products.contains(g); })) {
    verdict.status = SemicompatStatus::FullRing;
    verdict.witness = chart.constant(1);
    return verdict;
  }

  // Unknowns: coefficients of f over ring_basis. For every monomial m the
  // remainder of f m modulo the product span must vanish.
  auto monomials = ambient_monomials(chart, degree_bound);
  std::vector<Matrix> blocks;
  std::size_t total_rows = 0;
  for (const auto& m : monomials) {
    std::vector<LaurentPoly> rems;
    rems.reserve(ring_basis.size());
    for (const auto& g : ring_basis) rems.push_back(products.reduce(chart.normal_form(g * m)));
    blocks.push_back(coefficient_matrix(rems));
    total_rows += blocks.back().rows();
  }
  Matrix system(total_rows, ring_basis.size());
  std::size_t offset = 0;
  for (const auto& b : blocks) {
    for (std::size_t r = 0; r < b.rows(); ++r) {
      for (std::size_t c = 0; c < b.cols(); ++c) system(offset + r, c) = b(r, c);
    }
    offset += b.rows();
  }
  PolySpan witnesses(chart.ring());
  for (const auto& v : nullspace(system)) witnesses.insert(combine(chart.ring(), ring_basis, v));
  if (witnesses.dimension() > 0) {
    verdict.status = SemicompatStatus::IdealWitness;
    verdict.witness = witnesses.basis().back();
  }
  return verdict;
}

// ---------------------------------------------------------------- fiber condition

std::size_t wedge_span_rank(const std::vector<FiberPair>& pairs, const Point& point) {
  const auto& chart = point.chart();
  const auto n = chart->dimension();
  const std::size_t cols = n * (n - 1) / 2;
  Matrix m(pairs.size(), cols);
  for (std::size_t r = 0; r < pairs.size(); ++r) {
    const auto& pr = pairs[r];
    if (pr.xi.chart() != chart || pr.eta.chart() != chart) {
      throw VariableMismatch("fiber pair lives on a different chart than the point");
    }
    Rational w = point.evaluate(pr.witness);
    std::vector<Rational> x(n), y(n);
    for (std::size_t a = 0; a < n; ++a) {
      x[a] = point.evaluate(pr.xi.free_component(a));
      y[a] = point.evaluate(pr.eta.free_component(a));
    }
    std::size_t c = 0;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) m(r, c++) = w * (x[a] * y[b] - x[b] * y[a]);
    }
  }
  return rank(m);
}

bool condition_a_fiber(const std::vector<FiberPair>& pairs, const Point& point) {
  const auto n = point.chart()->dimension();
  return wedge_span_rank(pairs, point) == n * (n - 1) / 2;
}

// ---------------------------------------------------------------- flow tangent map

Formula3Check check_formula3(const VectorField& nu, const LaurentPoly& f, const Point& point, int bound) {
  const auto& chart = nu.chart();
  if (point.chart() != chart) throw VariableMismatch("point lives on a different chart than the field");
  LaurentPoly g = chart->normal_form(f);
  if (!nu.apply(g).is_zero()) throw PreconditionError("f is not in the kernel of the field");
  if (!point.evaluate(g).is_zero()) throw PreconditionError("f does not vanish at the point");
  lnd_flow(nu, chart->constant(1), bound);

  Flow flow = lnd_flow(g * nu, chart->constant(1), bound);
  const auto& free = chart->free_coordinates();
  const auto n = free.size();
  Formula3Check out{Matrix(n, n), Matrix::identity(n)};
  for (std::size_t i = 0; i < n; ++i) {
    Rational nu_i = point.evaluate(nu.free_component(i));
    for (std::size_t j = 0; j < n; ++j) {
      out.jacobian(i, j) = point.evaluate(partial_derivative(flow.images[free[i]], free[j]));
      out.expected(i, j) += nu_i * point.evaluate(partial_derivative(g, free[j]));
    }
  }
  return out;
}

bool verify_formula3(const VectorField& nu, const LaurentPoly& f, const Point& point, int bound) {
  return check_formula3(nu, f, point, bound).holds();
}

// ---------------------------------------------------------------- seven-family decomposition

SurfaceData surface_data(const ChartPtr& chart) {
  if (chart->ambient_dimension() != 3 || chart->relations().size() != 1 || chart->relations()[0].solvable != 2) {
    throw PreconditionError("not a surface p(x) + q(y) + x y z = 1 solved for its third coordinate");
  }
  const auto& ring = chart->ring();
  const LaurentPoly& rel = chart->relations()[0].poly;
  Rational lead = rel.coefficient({1, 1, 1});
  if (lead.is_zero()) throw PreconditionError("relation has no x y z term");
  LaurentPoly g = rel * lead.inverse();
  SurfaceData s{chart, 0, 1, 2, LaurentPoly(ring), LaurentPoly(ring)};
  if (g.coefficient({0, 0, 0}) != Rational(-1)) throw PreconditionError("relation constant is not -1");
  for (const auto& [e, c] : g.terms()) {
    if (e == Exponents{1, 1, 1} || e == Exponents{0, 0, 0}) continue;
    if (e[0] > 0 && e[1] == 0 && e[2] == 0) {
      s.p.add_term(e, c);
    } else if (e[0] == 0 && e[1] > 0 && e[2] == 0) {
      s.q.add_term(e, c);
    } else {
      throw PreconditionError("relation term outside p(x) + q(y) + x y z - 1: " + g.to_string());
    }
  }
  return s;
}

Formula4Decomposition make_decomposition(int truncation) {
  const auto n = static_cast<std::size_t>(std::max(truncation, 0));
  Formula4Decomposition d;
  d.truncation = static_cast<int>(n);
  d.a.assign(n, Rational(0));
  d.b.assign(n, Rational(0));
  d.c.assign(n, Rational(0));
  d.aa.assign(n, std::vector<Rational>(n, Rational(0)));
  d.bb = d.aa;
  d.cc = d.aa;
  return d;
}

namespace {

// Family index: 0 constant, 1..3 pure powers of x, y, z, 4..6 mixed xy, xz, yz.
struct FamilyMember {
  int family;
  int i;
  int j;
};

std::optional<FamilyMember> classify(const Exponents& e) {
  const int x = e[0], y = e[1], z = e[2];
  if (x < 0 || y < 0 || z < 0) return std::nullopt;
  const int positive = (x > 0) + (y > 0) + (z > 0);
  if (positive == 0) return FamilyMember{0, 0, 0};
  if (positive == 1) {
    if (x > 0) return FamilyMember{1, x, 0};
    if (y > 0) return FamilyMember{2, y, 0};
    return FamilyMember{3, z, 0};
  }
  if (positive == 2) {
    if (z == 0) return FamilyMember{4, x, y};
    if (y == 0) return FamilyMember{5, x, z};
    return FamilyMember{6, y, z};
  }
  return std::nullopt;
}

Rational& slot(Formula4Decomposition& d, const FamilyMember& m) {
  const auto i = static_cast<std::size_t>(m.i - 1);
  const auto j = static_cast<std::size_t>(m.j - 1);
  switch (m.family) {
    case 0: return d.a0;
    case 1: return d.a[i];
    case 2: return d.b[i];
    case 3: return d.c[i];
    case 4: return d.aa[i][j];
    case 5: return d.bb[i][j];
    default: return d.cc[i][j];
  }
}

Exponents member_exponents(const FamilyMember& m) {
  switch (m.family) {
    case 0: return {0, 0, 0};
    case 1: return {m.i, 0, 0};
    case 2: return {0, m.i, 0};
    case 3: return {0, 0, m.i};
    case 4: return {m.i, m.j, 0};
    case 5: return {m.i, 0, m.j};
    default: return {0, m.i, m.j};
  }
}

std::vector<FamilyMember> family_members(int n) {
  std::vector<FamilyMember> out{{0, 0, 0}};
  for (int f = 1; f <= 3; ++f) {
    for (int i = 1; i <= n; ++i) out.push_back({f, i, 0});
  }
  for (int f = 4; f <= 6; ++f) {
    for (int i = 1; i <= n; ++i) {
      for (int j = 1; j <= n; ++j) out.push_back({f, i, j});
    }
  }
  return out;
}

Formula4Decomposition from_standard(const LaurentPoly& standard) {
  int n = 0;
  for (const auto& [e, c] : standard.terms()) n = std::max({n, e[0], e[1], e[2]});
  auto d = make_decomposition(n);
  for (const auto& [e, c] : standard.terms()) slot(d, *classify(e)) += c;
  return d;
}

Formula4Decomposition decompose_by_rewriting(const LaurentPoly& f, const SurfaceData& s, int cap) {
  const auto& ring = s.chart->ring();
  const LaurentPoly replacement = LaurentPoly::constant(ring, 1) - s.p - s.q;
  LaurentPoly done(ring);
  LaurentPoly todo = f;
  while (!todo.is_zero()) {
    LaurentPoly next(ring);
    for (const auto& [e, c] : todo.terms()) {
      if (e[0] > 0 && e[1] > 0 && e[2] > 0) {
        Exponents lower{e[0] - 1, e[1] - 1, e[2] - 1};
        next += LaurentPoly::monomial(ring, std::move(lower), c) * replacement;
      } else {
        done.add_term(e, c);
      }
    }
    todo = std::move(next);
  }
  auto d = from_standard(done);
  if (d.truncation > cap) throw Error("decomposition truncation " + std::to_string(d.truncation) + " exceeds the cap");
  return d;
}

Formula4Decomposition decompose_by_solving(const LaurentPoly& f, const SurfaceData& s, int cap) {
  const auto& chart = *s.chart;
  const auto& ring = chart.ring();
  LaurentPoly g = chart.normal_form(f);
  int n = 1;
  for (const auto& [e, c] : g.terms()) {
    for (int k : e) n = std::max(n, std::abs(k));
  }
  for (; n <= cap; ++n) {
    auto members = family_members(n);
    std::vector<LaurentPoly> columns;
    columns.reserve(members.size() + 1);
    for (const auto& m : members) columns.push_back(chart.normal_form(LaurentPoly::monomial(ring, member_exponents(m))));
    columns.push_back(g);
    Matrix full = coefficient_matrix(columns);
    Matrix lhs(full.rows(), members.size());
    std::vector<Rational> rhs(full.rows());
    for (std::size_t r = 0; r < full.rows(); ++r) {
      for (std::size_t c = 0; c < members.size(); ++c) lhs(r, c) = full(r, c);
      rhs[r] = full(r, members.size());
    }
    auto sol = solve(lhs, rhs);
    if (!sol) continue;
    auto d = make_decomposition(n);
    for (std::size_t k = 0; k < members.size(); ++k) slot(d, members[k]) = (*sol)[k];
    return d.trimmed();
  }
  throw Error("seven-family decomposition not found within truncation " + std::to_string(cap));
}

}  // namespace

Formula4Decomposition Formula4Decomposition::trimmed() const {
  int n = 0;
  for (int i = 1; i <= truncation; ++i) {
    const auto k = static_cast<std::size_t>(i - 1);
    bool used = !a[k].is_zero() || !b[k].is_zero() || !c[k].is_zero();
    for (std::size_t j = 0; j < static_cast<std::size_t>(truncation) && !used; ++j) {
      used = !aa[k][j].is_zero() || !aa[j][k].is_zero() || !bb[k][j].is_zero() || !bb[j][k].is_zero() ||
             !cc[k][j].is_zero() || !cc[j][k].is_zero();
    }
    if (used) n = i;
  }
  auto d = make_decomposition(n);
  d.a0 = a0;
  for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) {
    d.a[i] = a[i];
    d.b[i] = b[i];
    d.c[i] = c[i];
    for (std::size_t j = 0; j < static_cast<std::size_t>(n); ++j) {
      d.aa[i][j] = aa[i][j];
      d.bb[i][j] = bb[i][j];
      d.cc[i][j] = cc[i][j];
    }
  }
  return d;
}

bool operator==(const Formula4Decomposition& l, const Formula4Decomposition& r) {
  auto a = l.trimmed();
  auto b = r.trimmed();
  return a.truncation == b.truncation && a.a0 == b.a0 && a.a == b.a && a.b == b.b && a.c == b.c && a.aa == b.aa &&
         a.bb == b.bb && a.cc == b.cc;
}

std::string Formula4Decomposition::to_string() const {
  static const char* const names[] = {"1", "x", "y", "z", "x*y", "x*z", "y*z"};
  std::ostringstream os;
  os << '{';
  bool first = true;
  auto d = *this;
  for (const auto& m : family_members(truncation)) {
    const Rational& v = slot(d, m);
    if (v.is_zero()) continue;
    if (!first) os << ", ";
    first = false;
    os << names[m.family];
    if (m.family >= 1) os << '[' << m.i;
    if (m.family >= 4) os << ',' << m.j;
    if (m.family >= 1) os << ']';
    os << ": " << v;
  }
  os << '}';
  return os.str();
}

Formula4Decomposition formula4_decompose(const LaurentPoly& f, const ChartPtr& surface, int max_truncation) {
  auto s = surface_data(surface);
  if (!same_ring(f.ring(), surface->ring())) throw VariableMismatch("polynomial does not live on the surface ring");
  if (f.has_negative_exponents()) return decompose_by_solving(f, s, max_truncation);
  return decompose_by_rewriting(f, s, max_truncation);
}

LaurentPoly formula4_reconstruct(const Formula4Decomposition& d, const ChartPtr& surface) {
  const auto& ring = surface->ring();
  if (ring->size() != 3) throw PreconditionError("decomposition needs a three-coordinate surface");
  LaurentPoly r(ring);
  auto copy = d;
  for (const auto& m : family_members(d.truncation)) {
    const Rational& v = slot(copy, m);
    if (!v.is_zero()) r.add_term(member_exponents(m), v);
  }
  return r;
}

// ---------------------------------------------------------------- surfaces

LaurentPoly bracket_potential(const VectorField& xi, const VectorField& eta, const VolumeForm& w) {
  require_surface(w.chart());
  require_divergence_free(xi, w, "first field");
  require_divergence_free(eta, w, "second field");
  return interior_product(xi, interior_product(eta, w.form())).coefficient(0);
}

DiffForm potential_residual(const LaurentPoly& f, const VectorField& xi, const VolumeForm& w) {
  require_surface(w.chart());
  return exterior_derivative(DiffForm::scalar(w.chart(), f)) - theta(xi, w);
}

bool verify_potential(const LaurentPoly& f, const VectorField& xi, const VolumeForm& w) {
  return potential_residual(f, xi, w).is_zero();
}

std::optional<int> matched_potential_sign(const LaurentPoly& f, const VectorField& xi, const VolumeForm& w) {
  if (verify_potential(f, xi, w)) return 1;
  if (verify_potential(-f, xi, w)) return -1;
  return std::nullopt;
}

VectorField psi(const LaurentPoly& f, const VolumeForm& w) {
  const auto& chart = w.chart();
  require_surface(chart);
  const LaurentPoly h = chart->normal_form(f);
  const LaurentPoly inv = w.density().unit_inverse();
  const auto& free = chart->free_coordinates();
  return VectorField::from_free(chart, {partial_derivative(h, free[1]) * inv, -(partial_derivative(h, free[0]) * inv)});
}

}  // namespace volform::avdp
