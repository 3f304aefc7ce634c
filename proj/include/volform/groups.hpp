#pragma once

#include <string>
#include <utility>
#include <vector>

#include "volform/linalg.hpp"

namespace volform {

/// Matrix of B -> h B h^-1 on span(basis), in that basis. Throws GroupError
/// when h is singular, the basis is dependent or the span is not stable.
Matrix adjoint_matrix(const Matrix& h, const std::vector<Matrix>& basis);

/// det(adjoint_matrix(h, basis)).
Rational submodular(const Matrix& h, const std::vector<Matrix>& basis);

/// A subgroup Lie algebra inside n x n matrices together with named
/// elements of the acting group.
class GroupPresentation {
 public:
  using Element = std::pair<std::string, Matrix>;

  /// Throws GroupError on a dependent basis, a singular element or an
  /// element whose adjoint action does not preserve the span.
  static GroupPresentation make(std::size_t size, std::vector<Matrix> lie_basis, std::vector<Element> elements);

  std::size_t size() const { return size_; }
  const std::vector<Matrix>& lie_basis() const { return basis_; }
  const std::vector<Element>& elements() const { return elements_; }
  /// Throws GroupError for an unknown name.
  const Matrix& element(const std::string& name) const;

  Rational submodular(const Matrix& h) const { return volform::submodular(h, basis_); }
  /// True when the sub-modular function is 1 at every element.
  bool unimodular_at_elements() const;

 private:
  GroupPresentation() = default;
  std::size_t size_ = 0;
  std::vector<Matrix> basis_;
  std::vector<Element> elements_;
};

}  // namespace volform
