#include "volform/groups.hpp"

#include "volform/error.hpp"

namespace volform {

namespace {

void require_square(const Matrix& m, std::size_t n, const char* what) {
  if (m.rows() != n || m.cols() != n) {
    throw GroupError(std::string(what) + " is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                     ", expected " + std::to_string(n) + "x" + std::to_string(n));
  }
}

// Columns are the flattened basis matrices.
Matrix flatten(const std::vector<Matrix>& basis, std::size_t n) {
  Matrix m(n * n, basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k) {
    require_square(basis[k], n, "basis matrix");
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) m(i * n + j, k) = basis[k](i, j);
    }
  }
  return m;
}

}  // namespace

Matrix adjoint_matrix(const Matrix& h, const std::vector<Matrix>& basis) {
  if (!h.is_square()) throw GroupError("group element is not square");
  const auto n = h.rows();
  if (basis.empty()) return Matrix(0, 0);
  Matrix flat = flatten(basis, n);
  if (rank(flat) != basis.size()) throw GroupError("Lie algebra basis is linearly dependent");
  auto hinv = inverse(h);
  if (!hinv) throw GroupError("group element is not invertible");
  Matrix ad(basis.size(), basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k) {
    Matrix image = h * basis[k] * *hinv;
    std::vector<Rational> v(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) v[i * n + j] = image(i, j);
    }
    auto coords = solve(flat, v);
    if (!coords) throw GroupError("span of the Lie algebra basis is not stable under the adjoint action");
    for (std::size_t r = 0; r < basis.size(); ++r) ad(r, k) = (*coords)[r];
  }
  return ad;
}

Rational submodular(const Matrix& h, const std::vector<Matrix>& basis) {
  return determinant(adjoint_matrix(h, basis));
}

GroupPresentation GroupPresentation::make(std::size_t size, std::vector<Matrix> lie_basis,
                                          std::vector<Element> elements) {
  if (size == 0) throw GroupError("matrix size must be positive");
  if (!lie_basis.empty() && rank(flatten(lie_basis, size)) != lie_basis.size()) {
    throw GroupError("Lie algebra basis is linearly dependent");
  }
  for (const auto& [name, h] : elements) {
    require_square(h, size, ("element '" + name + "'").c_str());
    try {
      adjoint_matrix(h, lie_basis);
    } catch (const GroupError& e) {
      throw GroupError("element '" + name + "': " + e.what());
    }
  }
  GroupPresentation g;
  g.size_ = size;
  g.basis_ = std::move(lie_basis);
  g.elements_ = std::move(elements);
  return g;
}

const Matrix& GroupPresentation::element(const std::string& name) const {
  for (const auto& [n, h] : elements_) {
    if (n == name) return h;
  }
  throw GroupError("unknown group element '" + name + "'");
}

bool GroupPresentation::unimodular_at_elements() const {
  for (const auto& [name, h] : elements_) {
    if (submodular(h) != Rational(1)) return false;
  }
  return true;
}

}  // namespace volform
