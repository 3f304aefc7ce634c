#pragma once

#include <optional>
#include <string>
#include <vector>

#include "volform/calculus.hpp"
#include "volform/linalg.hpp"

namespace volform::avdp {

/// theta([xi, eta], w) - d(i_xi i_eta w). Throws PreconditionError unless both
/// fields are divergence-free.
DiffForm identity_one_residual(const VectorField& xi, const VectorField& eta, const VolumeForm& w);
/// True iff the residual above is the zero form.
bool verify_identity_one(const VectorField& xi, const VectorField& eta, const VolumeForm& w);

/// Ambient monomials with non-negative exponents and total degree <= bound,
/// in grlex order.
std::vector<LaurentPoly> ambient_monomials(const Chart& chart, int bound);
/// Echelon basis of the span of the normal forms of ambient_monomials: the
/// regular functions of degree <= bound.
std::vector<LaurentPoly> truncated_basis(const Chart& chart, int bound);

/// Echelonized basis of { f of degree <= bound : xi(f) = 0 }.
std::vector<LaurentPoly> kernel_basis(const VectorField& xi, int degree_bound);

enum class SemicompatStatus { FullRing, IdealWitness, Unknown };

std::string to_string(SemicompatStatus s);

struct SemicompatVerdict {
  SemicompatStatus status = SemicompatStatus::Unknown;
  std::optional<LaurentPoly> witness;
  int degree_bound = 0;
};

/// One-sided test on span((Ker xi)_{<=d} (Ker eta)_{<=d}): FullRing when the
/// span holds every regular function of degree <= d (witness 1); otherwise
/// IdealWitness with some f != 0 such that f m lies in the span for every
/// monomial m of degree <= d; otherwise Unknown. Never a negative certificate.
SemicompatVerdict semicompat_bounded(const VectorField& xi, const VectorField& eta, int degree_bound);

struct FiberPair {
  VectorField xi;
  VectorField eta;
  LaurentPoly witness;  // element of the associated ideal
};

/// Rank of { I_j(x) xi_j(x) ^ eta_j(x) } in the wedge square of the tangent
/// space at the point, in the free-coordinate trivialization.
std::size_t wedge_span_rank(const std::vector<FiberPair>& pairs, const Point& point);
/// Strong Condition (A) at one point: the wedges span the wedge square.
bool condition_a_fiber(const std::vector<FiberPair>& pairs, const Point& point);

struct Formula3Check {
  Matrix jacobian;  // of exp(f nu) at t = 1, free coordinates, at the point
  Matrix expected;  // identity + nu(point) (grad f(point))^T
  bool holds() const { return jacobian == expected; }
};

/// Throws PreconditionError when nu(f) != 0 or f(point) != 0, and
/// NotNilpotent when nu is not nilpotent within the bound.
Formula3Check check_formula3(const VectorField& nu, const LaurentPoly& f, const Point& point, int bound = 32);
bool verify_formula3(const VectorField& nu, const LaurentPoly& f, const Point& point, int bound = 32);

/// Presentation data of a surface p(x) + q(y) + x y z = 1 solved for z.
struct SurfaceData {
  ChartPtr chart;
  std::size_t x = 0, y = 1, z = 2;
  LaurentPoly p;  // in x only
  LaurentPoly q;  // in y only
};

/// Throws PreconditionError when the chart is not such a surface.
SurfaceData surface_data(const ChartPtr& chart);

/// f = a0 + sum a_i x^i + b_i y^i + c_i z^i + a_ij x^i y^j + b_ij x^i z^j + c_ij y^i z^j,
/// with 1 <= i, j <= N. Vectors are indexed from 0 for exponent 1.
struct Formula4Decomposition {
  Rational a0;
  std::vector<Rational> a, b, c;
  std::vector<std::vector<Rational>> aa, bb, cc;
  int truncation = 0;

  /// Same coefficients at the smallest truncation that holds them.
  Formula4Decomposition trimmed() const;
  std::string to_string() const;
  friend bool operator==(const Formula4Decomposition& l, const Formula4Decomposition& r);
};

Formula4Decomposition make_decomposition(int truncation);

/// Unique coefficients of f in the seven monomial families. Polynomial
/// input is rewritten through x y z = 1 - p - q; Laurent input (e.g. a
/// normal form) is solved against the normal forms of the family members.
/// Throws Error when the truncation cap is exceeded.
Formula4Decomposition formula4_decompose(const LaurentPoly& f, const ChartPtr& surface, int max_truncation = 24);
/// The seven-family sum as an ambient polynomial.
LaurentPoly formula4_reconstruct(const Formula4Decomposition& d, const ChartPtr& surface);

/// i_xi i_eta w on a surface. Throws PreconditionError when the chart is not
/// two-dimensional or a field is not divergence-free.
LaurentPoly bracket_potential(const VectorField& xi, const VectorField& eta, const VolumeForm& w);

/// d(f) - theta(xi, w) on a surface.
DiffForm potential_residual(const LaurentPoly& f, const VectorField& xi, const VolumeForm& w);
/// True iff d(f) = theta(xi, w).
bool verify_potential(const LaurentPoly& f, const VectorField& xi, const VolumeForm& w);
/// The c in {+1, -1} with d(c f) = theta(xi, w), preferring +1.
std::optional<int> matched_potential_sign(const LaurentPoly& f, const VectorField& xi, const VolumeForm& w);

/// The field xi with i_xi w = d f on a surface.
VectorField psi(const LaurentPoly& f, const VolumeForm& w);

}  // namespace volform::avdp
