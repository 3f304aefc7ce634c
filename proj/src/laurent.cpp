#include "volform/laurent.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "volform/error.hpp"

namespace volform {

// ---------------------------------------------------------------- Ring

Ring::Ring(std::vector<std::string> names, std::vector<bool> invertible)
    : names_(std::move(names)), invertible_(std::move(invertible)) {}

std::shared_ptr<const Ring> Ring::make(std::vector<std::string> names,
                                       std::vector<bool> invertible) {
  if (invertible.empty()) invertible.assign(names.size(), false);
  if (invertible.size() != names.size()) {
    throw Error("ring: invertibility flags do not match the variable list");
  }
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i].empty()) throw Error("ring: empty variable name");
    for (std::size_t j = 0; j < i; ++j) {
      if (names[i] == names[j]) throw Error("ring: duplicate variable '" + names[i] + "'");
    }
  }
  return std::shared_ptr<const Ring>(new Ring(std::move(names), std::move(invertible)));
}

std::optional<std::size_t> Ring::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return i;
  }
  return std::nullopt;
}

std::size_t Ring::require(std::string_view name) const {
  if (auto i = index_of(name)) return *i;
  throw UnknownVariable("unknown variable '" + std::string(name) + "'");
}

std::shared_ptr<const Ring> Ring::extend(const std::vector<std::string>& extra) const {
  auto names = names_;
  auto inv = invertible_;
  for (const auto& e : extra) {
    names.push_back(e);
    inv.push_back(false);
  }
  return make(std::move(names), std::move(inv));
}

bool Ring::is_prefix_of(const Ring& other) const {
  if (other.size() < size()) return false;
  for (std::size_t i = 0; i < size(); ++i) {
    if (names_[i] != other.names_[i] || invertible_[i] != other.invertible_[i]) return false;
  }
  return true;
}

bool same_ring(const RingPtr& a, const RingPtr& b) { return a == b || *a == *b; }

// ---------------------------------------------------------------- order

int total_degree(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0); }

bool GrLexLess::operator()(const Exponents& a, const Exponents& b) const {
  const int da = total_degree(a);
  const int db = total_degree(b);
  if (da != db) return da < db;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

// ---------------------------------------------------------------- LaurentPoly

LaurentPoly::LaurentPoly(RingPtr ring) : ring_(std::move(ring)) {
  if (!ring_) throw Error("polynomial without a ring");
}

LaurentPoly LaurentPoly::constant(RingPtr ring, const Rational& c) {
  LaurentPoly p(std::move(ring));
  p.add_term(Exponents(p.ring_->size(), 0), c);
  return p;
}

LaurentPoly LaurentPoly::variable(RingPtr ring, std::string_view name) {
  const auto i = ring->require(name);
  return variable(std::move(ring), i);
}

LaurentPoly LaurentPoly::variable(RingPtr ring, std::size_t index) {
  Exponents e(ring->size(), 0);
  e.at(index) = 1;
  return monomial(std::move(ring), std::move(e));
}

LaurentPoly LaurentPoly::monomial(RingPtr ring, Exponents exponents, const Rational& coefficient) {
  if (exponents.size() != ring->size()) throw VariableMismatch("exponent vector length mismatch");
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    if (exponents[i] < 0 && !ring->invertible(i)) {
      throw DomainError("negative power of non-invertible variable '" + ring->name(i) + "'");
    }
  }
  LaurentPoly p(std::move(ring));
  p.add_term(exponents, coefficient);
  return p;
}

void LaurentPoly::add_term(const Exponents& e, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

bool LaurentPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() != 1) return false;
  const auto& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](int k) { return k == 0; });
}

std::optional<Rational> LaurentPoly::constant_value() const {
  if (!is_constant()) return std::nullopt;
  if (terms_.empty()) return Rational(0);
  return terms_.begin()->second;
}

bool LaurentPoly::is_unit() const {
  if (terms_.size() != 1) return false;
  const auto& e = terms_.begin()->first;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] != 0 && !ring_->invertible(i)) return false;
  }
  return true;
}

LaurentPoly LaurentPoly::unit_inverse() const {
  if (!is_unit()) throw DomainError("'" + to_string() + "' is not a unit of the Laurent ring");
  const auto& [e, c] = *terms_.begin();
  Exponents inv(e.size());
  std::transform(e.begin(), e.end(), inv.begin(), [](int k) { return -k; });
  LaurentPoly r(ring_);
  r.terms_.emplace(std::move(inv), c.inverse());
  return r;
}

bool LaurentPoly::has_negative_exponents() const {
  for (const auto& [e, c] : terms_) {
    if (std::any_of(e.begin(), e.end(), [](int k) { return k < 0; })) return true;
  }
  return false;
}

bool LaurentPoly::involves(std::size_t var) const {
  return std::any_of(terms_.begin(), terms_.end(),
                     [var](const auto& t) { return t.first[var] != 0; });
}

std::optional<int> LaurentPoly::degree() const {
  if (terms_.empty()) return std::nullopt;
  return total_degree(terms_.rbegin()->first);
}

int LaurentPoly::max_exponent(std::size_t var) const {
  int m = 0;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (first || e[var] > m) m = e[var];
    first = false;
  }
  return m;
}

int LaurentPoly::min_exponent(std::size_t var) const {
  int m = 0;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (first || e[var] < m) m = e[var];
    first = false;
  }
  return m;
}

const Exponents& LaurentPoly::leading_exponents() const {
  if (terms_.empty()) throw Error("leading term of the zero polynomial");
  return terms_.rbegin()->first;
}

const Rational& LaurentPoly::leading_coefficient() const {
  if (terms_.empty()) throw Error("leading term of the zero polynomial");
  return terms_.rbegin()->second;
}

Rational LaurentPoly::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

void LaurentPoly::check_same_ring(const LaurentPoly& o, const char* op) const {
  if (!same_ring(ring_, o.ring_)) {
    throw VariableMismatch(std::string(op) + ": variable lists differ");
  }
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r(*this);
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  check_same_ring(o, "add");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  check_same_ring(o, "sub");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) {
  *this = *this * o;
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  a.check_same_ring(b, "mul");
  LaurentPoly r(a.ring_);
  if (a.terms_.empty() || b.terms_.empty()) return r;
  const std::size_t n = a.ring_->size();
  Exponents e(n);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < n; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

LaurentPoly LaurentPoly::pow(int exponent) const {
  if (exponent < 0) return unit_inverse().pow(-exponent);
  LaurentPoly result = constant(ring_, 1);
  LaurentPoly base = *this;
  while (exponent > 0) {
    if (exponent & 1) result = result * base;
    exponent >>= 1;
    if (exponent > 0) base = base * base;
  }
  return result;
}

bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
  return same_ring(a.ring_, b.ring_) && a.terms_ == b.terms_;
}

std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Rational mag = c.sign() < 0 ? -c : c;
    if (first) {
      if (c.sign() < 0) os << '-';
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    first = false;
    bool wrote = false;
    const bool is_const = std::all_of(e.begin(), e.end(), [](int k) { return k == 0; });
    if (!mag.is_one() || is_const) {
      os << mag;
      wrote = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (wrote) os << '*';
      os << ring_->name(i);
      if (e[i] != 1) os << '^' << e[i];
      wrote = true;
    }
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const LaurentPoly& p) { return os << p.to_string(); }

LaurentPoly add(const LaurentPoly& p, const LaurentPoly& q) { return p + q; }
LaurentPoly mul(const LaurentPoly& p, const LaurentPoly& q) { return p * q; }
LaurentPoly neg(const LaurentPoly& p) { return -p; }

// ---------------------------------------------------------------- calculus on polys

LaurentPoly partial_derivative(const LaurentPoly& p, std::size_t var) {
  if (var >= p.ring()->size()) throw UnknownVariable("variable index out of range");
  LaurentPoly r(p.ring());
  for (const auto& [e, c] : p.terms()) {
    if (e[var] == 0) continue;
    Exponents d = e;
    d[var] -= 1;
    r.add_term(d, c * Rational(e[var]));
  }
  return r;
}

LaurentPoly partial_derivative(const LaurentPoly& p, std::string_view var) {
  return partial_derivative(p, p.ring()->require(var));
}

namespace {

// Image of each source variable together with a cache of its powers.
struct PowerTable {
  explicit PowerTable(LaurentPoly image) : base(std::move(image)) {}

  const LaurentPoly& get(int k) {
    auto it = cache.find(k);
    if (it != cache.end()) return it->second;
    LaurentPoly value(base.ring());
    if (k == 0) {
      value = LaurentPoly::constant(base.ring(), 1);
    } else if (k == 1) {
      value = base;
    } else if (k > 1) {
      value = get(k - 1) * base;
    } else {
      if (!base.is_unit()) {
        throw DomainError("substitution makes a negative power of the non-unit '" +
                          base.to_string() + "'");
      }
      value = base.unit_inverse().pow(-k);
    }
    return cache.emplace(k, std::move(value)).first->second;
  }

  LaurentPoly base;
  std::unordered_map<int, LaurentPoly> cache;
};

}  // namespace

LaurentPoly substitute(const LaurentPoly& p, const Bindings& bindings, const RingPtr& target) {
  const auto& src = *p.ring();
  for (const auto& [name, image] : bindings) {
    if (!src.index_of(name)) throw UnknownVariable("substitution binds unknown variable '" + name + "'");
    if (!same_ring(image.ring(), target)) {
      throw VariableMismatch("substitution images live in different rings");
    }
  }
  std::vector<PowerTable> tables;
  tables.reserve(src.size());
  std::vector<bool> identity(src.size(), false);
  std::vector<std::size_t> target_index(src.size(), 0);
  for (std::size_t i = 0; i < src.size(); ++i) {
    auto it = bindings.find(src.name(i));
    if (it != bindings.end()) {
      tables.emplace_back(it->second);
      continue;
    }
    auto j = target->index_of(src.name(i));
    if (!j) {
      // Only an error if the variable actually occurs.
      tables.emplace_back(LaurentPoly(target));
      if (p.involves(i)) {
        throw UnknownVariable("variable '" + src.name(i) + "' has no image in the target ring");
      }
      continue;
    }
    if (src.invertible(i) && !target->invertible(*j) && p.min_exponent(i) < 0) {
      throw DomainError("substitution makes a negative power of the non-unit '" + src.name(i) + "'");
    }
    identity[i] = true;
    target_index[i] = *j;
    tables.emplace_back(LaurentPoly::variable(target, *j));
  }

  LaurentPoly result(target);
  Exponents direct(target->size());
  for (const auto& [e, c] : p.terms()) {
    std::fill(direct.begin(), direct.end(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (identity[i]) direct[target_index[i]] += e[i];
    }
    LaurentPoly term = LaurentPoly::monomial(target, direct, c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (!identity[i] && e[i] != 0) term = term * tables[i].get(e[i]);
    }
    result += term;
  }
  return result;
}

LaurentPoly substitute(const LaurentPoly& p, const Bindings& bindings) {
  const RingPtr target = bindings.empty() ? p.ring() : bindings.begin()->second.ring();
  return substitute(p, bindings, target);
}

LaurentPoly rebase(const LaurentPoly& p, const RingPtr& target) {
  if (same_ring(p.ring(), target)) return p;
  return substitute(p, {}, target);
}

Rational evaluate(const LaurentPoly& p, const std::vector<Rational>& values) {
  const auto& ring = *p.ring();
  if (values.size() != ring.size()) throw VariableMismatch("point dimension mismatch");
  for (std::size_t i = 0; i < ring.size(); ++i) {
    if (ring.invertible(i) && values[i].is_zero()) {
      throw DomainError("zero assigned to invertible variable '" + ring.name(i) + "'");
    }
  }
  Rational sum(0);
  for (const auto& [e, c] : p.terms()) {
    Rational t = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] != 0) t *= values[i].pow(e[i]);
    }
    sum += t;
  }
  return sum;
}

Rational evaluate(const LaurentPoly& p, const Assignment& point) {
  const auto& ring = *p.ring();
  std::vector<Rational> values(ring.size());
  for (const auto& [name, v] : point) {
    const auto i = ring.require(name);
    if (ring.invertible(i) && v.is_zero()) {
      throw DomainError("zero assigned to invertible variable '" + name + "'");
    }
    values[i] = v;
  }
  for (std::size_t i = 0; i < ring.size(); ++i) {
    if (p.involves(i) && point.find(ring.name(i)) == point.end()) {
      throw Error("evaluate: no value for variable '" + ring.name(i) + "'");
    }
    if (ring.invertible(i) && values[i].is_zero()) values[i] = 1;  // unused slot
  }
  return evaluate(p, values);
}

}  // namespace volform
