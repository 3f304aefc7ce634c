#include "volform/runner.hpp"

#include <atomic>
#include <chrono>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "volform/avdp.hpp"
#include "volform/dsl/eval.hpp"
#include "volform/dsl/parser.hpp"
#include "volform/error.hpp"

namespace volform {

std::string to_string(Status s) {
  switch (s) {
    case Status::Pass: return "PASS";
    case Status::Fail: return "FAIL";
    case Status::Error: return "ERROR";
    case Status::Unknown: return "UNKNOWN";
  }
  return "ERROR";
}

std::size_t Report::count(Status s) const {
  std::size_t n = 0;
  for (const auto& c : checks) n += c.status == s;
  return n;
}

int Report::exit_code() const { return count(Status::Fail) + count(Status::Error) > 0 ? 1 : 0; }

namespace {

using dsl::Value;

struct Outcome {
  Status status;
  std::string detail;
  std::string token;  // empty: the status word
};

Outcome pass(std::string detail = {}, std::string token = {}) { return {Status::Pass, std::move(detail), std::move(token)}; }
Outcome fail(std::string detail = {}, std::string token = {}) { return {Status::Fail, std::move(detail), std::move(token)}; }
Outcome verdict(bool ok, std::string detail = {}) { return {ok ? Status::Pass : Status::Fail, std::move(detail), {}}; }

std::string sign_token(int c) { return c > 0 ? "+1" : "-1"; }

class CheckContext {
 public:
  CheckContext(const Scenario& s, const CheckDirective& c, const RunOptions& o) : s_(s), c_(c), o_(o) {
    for (const auto& a : c.args) args_.push_back(dsl::parse_expression(a));
  }

  Outcome run() {
    const auto& k = c_.kind;
    if (k == "tangent") return tangent();
    if (k == "divfree") return divfree();
    if (k == "divergence") return divergence_is();
    if (k == "identity1") return identity1();
    if (k == "bracket") return bracket();
    if (k == "equal") return equal(false);
    if (k == "equal_pm") return equal(true);
    if (k == "kernel") return kernel();
    if (k == "kernel_contains") return kernel_contains();
    if (k == "semicompat") return semicompat();
    if (k == "condition_a") return condition_a();
    if (k == "potential") return potential();
    if (k == "bracket_potential") return bracket_potential();
    if (k == "exact") return exact();
    if (k == "closed") return closed();
    if (k == "invariant") return invariant();
    if (k == "character") return character_of();
    if (k == "lnd") return lnd();
    if (k == "formula3") return formula3();
    if (k == "formula4") return formula4();
    if (k == "submodular") return submodular_is();
    if (k == "unimodular") return unimodular();
    if (k == "character_property") return character_property();
    throw Error("unknown check kind '" + k + "'");
  }

 private:
  const dsl::Expr& arg(std::size_t i) const {
    if (i >= args_.size()) throw Error(c_.kind + ": missing argument " + std::to_string(i + 1));
    return *args_[i];
  }
  bool has(std::size_t i) const { return i < args_.size(); }
  void arity(std::size_t lo, std::size_t hi) const {
    if (args_.size() < lo || args_.size() > hi) throw Error(c_.kind + ": wrong number of arguments");
  }

  Value value(std::size_t i) const { return dsl::evaluate(arg(i), s_); }
  LaurentPoly scalar(std::size_t i) const { return dsl::eval_scalar(arg(i), s_); }
  VectorField field(std::size_t i) const { return dsl::eval_field(arg(i), s_); }
  DiffForm form(std::size_t i) const { return dsl::eval_form(arg(i), s_); }
  VolumeForm volume(std::size_t i) const {
    if (has(i)) return VolumeForm::make(form(i));
    return s_.volume_form();
  }
  const std::string& name(std::size_t i, const char* what) const {
    const auto& e = arg(i);
    if (e.kind != dsl::Expr::Kind::Ident) throw Error(c_.kind + ": argument " + std::to_string(i + 1) + " must name " + what);
    return e.text;
  }
  const Point& point(std::size_t i) const {
    const auto& n = name(i, "a point");
    for (const auto& [pn, p] : s_.points) {
      if (pn == n) return p;
    }
    throw Error("unknown point '" + n + "'");
  }
  const GroupPresentation& group(std::size_t i) const {
    const auto& n = name(i, "a group");
    for (const auto& [gn, g] : s_.groups) {
      if (gn == n) return g;
    }
    throw Error("unknown group '" + n + "'");
  }
  Matrix element(std::size_t i, const GroupPresentation& g) const {
    const auto& e = arg(i);
    if (e.kind == dsl::Expr::Kind::Ident) return g.element(e.text);
    return dsl::eval_matrix(e, s_);
  }
  int integer(std::size_t i) const {
    auto c = dsl::eval_constant(arg(i), s_);
    if (!c.is_integer()) throw Error(c_.kind + ": argument " + std::to_string(i + 1) + " must be an integer");
    return static_cast<int>(c.numerator().get_si());
  }

  Outcome tangent() {
    Value v = value(0);
    if (v.sort != Value::Sort::Field) throw Error("tangent: expected a field");
    for (const auto& r : s_.chart->relations()) {
      LaurentPoly acc(s_.chart->ring());
      for (std::size_t i = 0; i < v.field.size(); ++i) acc += v.field[i] * partial_derivative(r.poly, i);
      LaurentPoly res = s_.chart->normal_form(acc);
      if (!res.is_zero()) return fail("F(" + r.poly.to_string() + ") = " + res.to_string());
    }
    return pass();
  }

  Outcome divfree() {
    arity(1, 2);
    LaurentPoly g = volform::divergence(field(0), volume(1));
    return verdict(g.is_zero(), g.is_zero() ? "" : "divergence = " + g.to_string());
  }

  Outcome divergence_is() {
    LaurentPoly g = volform::divergence(field(0), volume(2));
    LaurentPoly want = scalar(1);
    return verdict(g == want, "divergence = " + g.to_string());
  }

  Outcome identity1() {
    DiffForm r = avdp::identity_one_residual(field(0), field(1), volume(2));
    return verdict(r.is_zero(), r.is_zero() ? "zero residual" : "residual: " + r.to_string());
  }

  VectorField field_or_zero(std::size_t i) const {
    Value v = value(i);
    if (v.sort == Value::Sort::Scalar && s_.chart->normal_form(*v.scalar).is_zero()) return VectorField::zero(s_.chart);
    return field(i);
  }

  Outcome bracket() {
    VectorField b = lie_bracket(field(0), field(1));
    VectorField want = field_or_zero(2);
    return verdict(b == want, b == want ? "" : "bracket = " + b.to_string());
  }

  // Normal-formed comparison of two values; returns the sign when +-.
  std::optional<int> compare(const Value& a, const Value& b, bool allow_minus) const {
    if (a.sort != b.sort) {
      throw Error("cannot compare a " + dsl::sort_name(a.sort) + " with a " + dsl::sort_name(b.sort));
    }
    auto nf = [&](const LaurentPoly& p) { return s_.chart->normal_form(p); };
    for (int sign : {1, -1}) {
      if (sign < 0 && !allow_minus) break;
      const Rational c(sign);
      bool same = true;
      switch (a.sort) {
        case Value::Sort::Scalar: same = nf(*a.scalar) == nf(*b.scalar) * c; break;
        case Value::Sort::Field:
          for (std::size_t i = 0; i < a.field.size() && same; ++i) same = nf(a.field[i]) == nf(b.field[i]) * c;
          break;
        case Value::Sort::Form: same = *a.form == c * *b.form; break;
        default: throw Error("cannot compare " + dsl::sort_name(a.sort) + "s");
      }
      if (same) return sign;
    }
    return std::nullopt;
  }

  static std::string show(const Value& v) {
    switch (v.sort) {
      case Value::Sort::Scalar: return v.scalar->to_string();
      case Value::Sort::Form: return v.form->to_string();
      case Value::Sort::Field: {
        std::string s;
        for (const auto& c : v.field) s += (s.empty() ? "" : ", ") + c.to_string();
        return "(" + s + ")";
      }
      default: return dsl::sort_name(v.sort);
    }
  }

  Outcome equal(bool pm) {
    Value a = value(0), b = value(1);
    auto sign = compare(a, b, pm);
    if (!sign) return fail("left = " + show(a) + ", right = " + show(b));
    if (!pm) return pass();
    return pass("sign " + sign_token(*sign), sign_token(*sign));
  }

  Outcome kernel() {
    VectorField f = field(0);
    Value gv = value(1);
    if (gv.sort != Value::Sort::Scalar) throw Error("kernel: expected a scalar generator");
    auto deg = gv.scalar->degree();
    if (!deg || *deg <= 0) throw Error("kernel: generator must be non-constant");
    const int d = o_.degree_bound;
    PolySpan want(s_.chart->ring());
    LaurentPoly power = s_.chart->constant(1);
    for (int k = 0; k * *deg <= d; ++k) {
      want.insert(s_.chart->normal_form(power));
      power = power * *gv.scalar;
    }
    auto basis = avdp::kernel_basis(f, d);
    PolySpan got(s_.chart->ring());
    for (const auto& b : basis) got.insert(b);
    bool ok = got.dimension() == want.dimension();
    for (const auto& b : basis) ok = ok && want.contains(b);
    std::string detail = "dimension " + std::to_string(got.dimension()) + " at degree bound " + std::to_string(d);
    if (!ok) detail += ", expected " + std::to_string(want.dimension());
    return verdict(ok, detail);
  }

  Outcome kernel_contains() {
    LaurentPoly r = field(0).apply(scalar(1));
    return verdict(r.is_zero(), r.is_zero() ? "" : "F(g) = " + r.to_string());
  }

  Outcome semicompat() {
    const int d = has(2) ? integer(2) : o_.degree_bound;
    auto v = avdp::semicompat_bounded(field(0), field(1), d);
    std::string detail = avdp::to_string(v.status) + " at degree bound " + std::to_string(d);
    if (v.witness) detail += ", witness " + v.witness->to_string();
    const Status st = v.status == avdp::SemicompatStatus::Unknown ? Status::Unknown : Status::Pass;
    return {st, detail, avdp::to_string(v.status)};
  }

  Outcome condition_a() {
    std::vector<avdp::FiberPair> pairs;
    for (std::size_t i = 0; i < args_.size(); ++i) {
      const auto& e = *args_[i];
      if (e.kind != dsl::Expr::Kind::Tuple || e.children.size() < 2 || e.children.size() > 3) {
        throw Error("condition_a: arguments must be (F, G) or (F, G, I)");
      }
      LaurentPoly w = e.children.size() == 3 ? dsl::eval_scalar(*e.children[2], s_) : s_.chart->constant(1);
      pairs.push_back({dsl::eval_field(*e.children[0], s_), dsl::eval_field(*e.children[1], s_), w});
    }
    const auto n = s_.chart->dimension();
    const std::size_t full = n * (n - 1) / 2;
    for (int k = 0; k < o_.points; ++k) {
      Point p = sample_point(s_.chart, o_.seed + static_cast<std::uint64_t>(k));
      auto r = avdp::wedge_span_rank(pairs, p);
      if (r != full) {
        return fail("rank " + std::to_string(r) + " < " + std::to_string(full) + " at " + p.to_string());
      }
    }
    return pass("rank " + std::to_string(full) + " at " + std::to_string(o_.points) + " sampled points");
  }

  Outcome potential() {
    LaurentPoly f = scalar(0);
    VectorField xi = field(1);
    VolumeForm w = volume(2);
    auto c = avdp::matched_potential_sign(f, xi, w);
    if (!c) return fail("residual: " + avdp::potential_residual(f, xi, w).to_string());
    return pass("c = " + sign_token(*c), sign_token(*c));
  }

  Outcome bracket_potential() {
    VectorField xi = field(0), eta = field(1);
    VolumeForm w = volume(2);
    LaurentPoly p = avdp::bracket_potential(xi, eta, w);
    DiffForm r = exterior_derivative(DiffForm::scalar(s_.chart, p)) - theta(lie_bracket(xi, eta), w);
    if (!r.is_zero()) return fail("d(potential) - theta([F, G]) = " + r.to_string());
    std::string detail = "potential " + p.to_string();
    if (!has(3)) return pass(detail);
    LaurentPoly g = scalar(3);
    if (p == g) return pass(detail + ", c = +1", "+1");
    if (p == -g) return pass(detail + ", c = -1", "-1");
    return fail(detail + ", expected +-(" + g.to_string() + ")");
  }

  Outcome exact() {
    DiffForm r = exterior_derivative(form(0)) - form(1);
    return verdict(r.is_zero(), r.is_zero() ? "" : "d(tau) - alpha = " + r.to_string());
  }

  Outcome closed() {
    DiffForm r = exterior_derivative(form(0));
    return verdict(r.is_zero(), r.is_zero() ? "" : "d(alpha) = " + r.to_string());
  }

  const SubstitutionAction& action(std::size_t i) const { return s_.action(name(i, "an action")); }

  std::optional<Rational> character_value(std::size_t i, const SubstitutionAction& a) const {
    Value v = value(i);
    switch (v.sort) {
      case Value::Sort::Form: return volform::character(*v.form, a);
      case Value::Sort::Field: return volform::character(field(i), a);
      case Value::Sort::Scalar: {
        LaurentPoly f = s_.chart->normal_form(*v.scalar);
        LaurentPoly g = a.apply(f);
        if (f.is_zero()) return g.is_zero() ? std::optional<Rational>(1) : std::nullopt;
        if (g.is_zero()) return std::nullopt;
        Rational k = g.leading_coefficient() / f.leading_coefficient();
        if (g == f * k) return k;
        return std::nullopt;
      }
      default: throw Error("character: expected a scalar, field or form");
    }
  }

  Outcome invariant() {
    const auto& a = action(1);
    auto c = character_value(0, a);
    if (c && *c == Rational(1)) return pass();
    return fail(c ? "character " + c->to_string() : "not an eigenvector of the action");
  }

  Outcome character_of() {
    const auto& a = action(1);
    auto c = character_value(0, a);
    if (!c) return fail("not an eigenvector of the action");
    std::string token = c->to_string();
    if (has(2)) {
      Rational want = dsl::eval_constant(arg(2), s_);
      if (*c != want) return fail("character " + token + ", expected " + want.to_string(), token);
    }
    return pass("character " + token, token);
  }

  Outcome lnd() {
    try {
      Flow f = lnd_flow(field(0), s_.chart->constant(1), o_.lnd_bound);
      return pass("nilpotent, flow of degree " + std::to_string(f.steps) + " in t");
    } catch (const NotNilpotent& e) {
      return fail(e.what());
    }
  }

  Outcome formula3() {
    auto r = avdp::check_formula3(field(0), scalar(1), point(2), o_.lnd_bound);
    if (r.holds()) return pass("jacobian " + r.jacobian.to_string());
    return fail("jacobian " + r.jacobian.to_string() + ", expected " + r.expected.to_string());
  }

  Outcome formula4() {
    Value v = value(0);
    if (v.sort != Value::Sort::Scalar) throw Error("formula4: expected a scalar");
    const LaurentPoly raw = *v.scalar;
    const LaurentPoly nf = s_.chart->normal_form(raw);
    auto direct = avdp::formula4_decompose(raw, s_.chart);
    auto solved = avdp::formula4_decompose(nf, s_.chart);
    LaurentPoly back = s_.chart->normal_form(avdp::formula4_reconstruct(direct, s_.chart));
    if (!(back == nf)) return fail("reconstruction " + back.to_string() + " differs from " + nf.to_string());
    if (!(direct == solved)) return fail("routes disagree: " + direct.to_string() + " vs " + solved.to_string());
    return pass(direct.trimmed().to_string());
  }

  Outcome submodular_is() {
    const auto& g = group(0);
    Rational got = g.submodular(element(1, g));
    Rational want = dsl::eval_constant(arg(2), s_);
    return verdict(got == want, "value " + got.to_string());
  }

  Outcome unimodular() {
    const auto& g = group(0);
    for (const auto& [n, h] : g.elements()) {
      Rational v = g.submodular(h);
      if (v != Rational(1)) return fail("value " + v.to_string() + " at " + n);
    }
    return pass(std::to_string(g.elements().size()) + " elements");
  }

  Outcome character_property() {
    const auto& g = group(0);
    const auto& els = g.elements();
    std::size_t checked = 0;
    auto test = [&](const Matrix& a, const Matrix& b, const std::string& label) -> std::optional<Outcome> {
      ++checked;
      if (g.submodular(a * b) != g.submodular(a) * g.submodular(b)) return fail("not multiplicative at " + label);
      return std::nullopt;
    };
    for (const auto& [na, a] : els) {
      auto inv = inverse(a);
      if (g.submodular(*inv) != g.submodular(a).inverse()) return fail("inverse rule fails at " + na);
      for (const auto& [nb, b] : els) {
        if (auto o = test(a, b, na + "*" + nb)) return *o;
      }
    }
    std::mt19937 rng(static_cast<std::mt19937::result_type>(o_.seed));
    for (int k = 0; k < 10 && !els.empty(); ++k) {
      Matrix a = Matrix::identity(g.size()), b = Matrix::identity(g.size());
      std::string label;
      for (int j = 0; j < 3; ++j) {
        const auto& [n1, m1] = els[rng() % els.size()];
        const auto& [n2, m2] = els[rng() % els.size()];
        a = a * m1;
        b = b * m2;
        label += n1 + n2;
      }
      if (auto o = test(a, b, "random product " + label)) return *o;
    }
    return pass(std::to_string(checked) + " products");
  }

  const Scenario& s_;
  const CheckDirective& c_;
  const RunOptions& o_;
  std::vector<dsl::ExprPtr> args_;
};

}  // namespace

CheckResult run_check(const Scenario& s, const CheckDirective& c, const RunOptions& options, std::size_t index) {
  CheckResult r;
  r.index = index;
  r.name = c.label();
  r.kind = c.kind;
  const auto start = std::chrono::steady_clock::now();
  Outcome o{Status::Error, {}, {}};
  try {
    o = CheckContext(s, c, options).run();
  } catch (const std::exception& e) {
    o = {Status::Error, e.what(), {}};
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.outcome = o.token.empty() ? to_string(o.status) : o.token;
  r.status = o.status;
  r.detail = o.detail;
  if (c.expect) {
    const bool matched = r.outcome == *c.expect || to_string(o.status) == *c.expect;
    r.status = matched ? Status::Pass : Status::Fail;
    r.detail = "expected " + *c.expect + ", got " + r.outcome + (o.detail.empty() ? "" : "; " + o.detail);
  }
  return r;
}

Report run(const Scenario& s, const RunOptions& options, std::string source) {
  Report report{std::move(source), options, std::vector<CheckResult>(s.checks.size())};
  const std::size_t n = s.checks.size();
  const auto jobs = static_cast<std::size_t>(std::max(1, options.jobs));
  if (jobs == 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) report.checks[i] = run_check(s, s.checks[i], options, i);
    return report;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) report.checks[i] = run_check(s, s.checks[i], options, i);
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < std::min(jobs, n); ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return report;
}

std::string to_json(const Report& r) {
  nlohmann::ordered_json j;
  j["format"] = "volform-report";
  j["version"] = 1;
  j["source"] = r.source;
  j["seed"] = r.options.seed;
  j["bounds"] = {{"degree", r.options.degree_bound}, {"lnd", r.options.lnd_bound}, {"points", r.options.points}};
  auto checks = nlohmann::ordered_json::array();
  for (const auto& c : r.checks) {
    nlohmann::ordered_json x;
    x["index"] = c.index;
    x["name"] = c.name;
    x["kind"] = c.kind;
    x["status"] = to_string(c.status);
    x["outcome"] = c.outcome;
    x["detail"] = c.detail;
    if (r.options.timings) x["wall_time_s"] = c.seconds;
    checks.push_back(std::move(x));
  }
  j["checks"] = std::move(checks);
  j["summary"] = {{"total", r.checks.size()},
                  {"pass", r.count(Status::Pass)},
                  {"fail", r.count(Status::Fail)},
                  {"error", r.count(Status::Error)},
                  {"unknown", r.count(Status::Unknown)}};
  j["exit_code"] = r.exit_code();
  return j.dump(2) + "\n";
}

std::string to_text(const Report& r) {
  std::ostringstream os;
  os << "volform check " << r.source << " (seed " << r.options.seed << ", degree bound " << r.options.degree_bound
     << ", lnd bound " << r.options.lnd_bound << ", points " << r.options.points << ")\n";
  const auto width = std::to_string(r.checks.size()).size();
  for (const auto& c : r.checks) {
    std::string idx = std::to_string(c.index + 1);
    os << '[' << std::string(width - idx.size(), ' ') << idx << "] " << to_string(c.status)
       << std::string(8 - to_string(c.status).size(), ' ') << c.name;
    if (!c.detail.empty()) os << "  -- " << c.detail;
    if (r.options.timings) os << "  (" << c.seconds << " s)";
    os << '\n';
  }
  os << "summary: " << r.count(Status::Pass) << " pass, " << r.count(Status::Fail) << " fail, "
     << r.count(Status::Error) << " error, " << r.count(Status::Unknown) << " unknown\n";
  return os.str();
}

// ---------------------------------------------------------------- catalog

namespace {

int parse_positive(std::string_view text, std::string_view what) {
  int v = 0;
  if (text.empty()) throw Error(std::string(what) + " needs a number");
  for (char c : text) {
    if (c < '0' || c > '9') throw Error(std::string(what) + ": '" + std::string(text) + "' is not a number");
    v = v * 10 + (c - '0');
    if (v > 1000) throw Error(std::string(what) + ": number too large");
  }
  return v;
}

Scenario surface_from(std::string_view params) {
  std::string p = "x", q = "y";
  if (!params.empty()) {
    auto comma = params.find(",q=");
    if (params.substr(0, 2) != "p=" || comma == std::string_view::npos) {
      throw Error("surface parameters must read p=EXPR,q=EXPR");
    }
    p = std::string(params.substr(2, comma - 2));
    q = std::string(params.substr(comma + 3));
  }
  Scenario scope;
  scope.chart = Chart::make(Ring::make({"x", "y"}, {false, false}), {});
  auto pp = dsl::eval_scalar(*dsl::parse_expression(p), scope);
  auto qq = dsl::eval_scalar(*dsl::parse_expression(q), scope);
  return surface_S(pp, qq);
}

}  // namespace

Scenario builtin_scenario(std::string_view name) {
  auto colon = name.find(':');
  std::string_view head = name.substr(0, colon);
  std::string_view rest = colon == std::string_view::npos ? std::string_view{} : name.substr(colon + 1);
  if (head == "torus") return torus(parse_positive(rest, "torus"));
  if (head == "sl2" && rest.empty()) return sl2();
  if (head == "surface") return surface_from(rest);
  if (head == "xm1") return x_m1(parse_positive(rest, "xm1"));
  if (head == "quadric" && rest.empty()) return quadric();
  if (head == "gamma" && rest.empty()) return gamma_example();
  if (head == "product") {
    auto bar = rest.find('|');
    if (bar == std::string_view::npos) throw Error("product needs two scenarios: product:A|B");
    return product(builtin_scenario(rest.substr(0, bar)), builtin_scenario(rest.substr(bar + 1)));
  }
  throw Error("unknown scenario '" + std::string(name) + "'");
}

std::vector<std::pair<std::string, std::string>> builtin_catalog() {
  return {
      {"torus:N", "(C*)^N with w = prod dz_i/z_i, fields nu_i, action neg, Condition (A) pairs"},
      {"sl2", "SL2 with fields xi, eta, volume a1^-1 da1^da2^db1, point p0 and sub-modular groups"},
      {"surface:p=P,q=Q", "p(x) + q(y) + xyz = 1 with delta_x, delta_y, delta_z; bare 'surface' means p=x,q=y"},
      {"xm1:M", "x^M v - y u = 1 with w = x^-M dx^dy^du and its primitive tau for M >= 2"},
      {"quadric", "uv = x^2 - 1 with w = du^dx/u and the action gamma"},
      {"gamma", "quadric x torus:1 under the diagonal Z2 action"},
      {"product:A|B", "product of two scenarios with lifted fields, forms and actions"},
  };
}

}  // namespace volform
