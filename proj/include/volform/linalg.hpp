#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "volform/laurent.hpp"
#include "volform/rational.hpp"

namespace volform {

/// Dense row-major matrix over the rationals.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<std::vector<Rational>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Matrix transpose() const;
  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  friend bool operator==(const Matrix& a, const Matrix& b) = default;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

struct RowEchelon {
  Matrix reduced;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

/// Reduced row echelon form by Gauss-Jordan elimination.
RowEchelon rref(Matrix m);
std::size_t rank(const Matrix& m);
/// Basis of { v : m v = 0 }, one vector per free column.
std::vector<std::vector<Rational>> nullspace(const Matrix& m);
/// Some solution of m x = b, or nullopt when inconsistent.
std::optional<std::vector<Rational>> solve(const Matrix& m, std::span<const Rational> b);
std::optional<Matrix> inverse(const Matrix& m);

/// Determinant by fraction-free Bareiss elimination: rows are scaled to
/// integers, eliminated with exact integer division, then unscaled.
Rational determinant(const Matrix& m);

/// Echelon basis of a finite-dimensional space of Laurent polynomials,
/// indexed by leading monomial. Reduction modulo the basis yields a
/// canonical representative of the coset, so span membership is exact.
class PolySpan {
 public:
  explicit PolySpan(RingPtr ring) : ring_(std::move(ring)) {}

  /// Adds p; returns false when p already lies in the span.
  bool insert(const LaurentPoly& p);
  /// Remainder of p with every pivot monomial eliminated.
  LaurentPoly reduce(const LaurentPoly& p) const;
  bool contains(const LaurentPoly& p) const { return reduce(p).is_zero(); }
  std::size_t dimension() const { return basis_.size(); }

  /// Fully reduced basis, leading coefficient 1, ordered by descending
  /// leading monomial.
  std::vector<LaurentPoly> basis() const;

 private:
  RingPtr ring_;
  std::map<Exponents, LaurentPoly, GrLexLess> basis_;
};

}  // namespace volform
