#pragma once

// Tolerance-aware dense linear algebra shared by the checkers. Everything is
// complex; real data is embedded. Rank decisions use singular values with a
// threshold relative to the largest singular value.

#include <string_view>

#include "phwell/types.hpp"

namespace phwell::numlin {

enum class Definiteness { positive_semidefinite, negative_semidefinite, indefinite, zero };

std::string_view to_string(Definiteness d);

struct DefinitenessReport {
  double min_eig = 0.0;
  double max_eig = 0.0;
  Definiteness verdict = Definiteness::zero;
  double tolerance_used = 0.0;

  bool psd() const {
    return verdict == Definiteness::positive_semidefinite || verdict == Definiteness::zero;
  }
  bool nsd() const {
    return verdict == Definiteness::negative_semidefinite || verdict == Definiteness::zero;
  }
  bool is_zero() const { return verdict == Definiteness::zero; }
};

/// Orthonormal basis (q x r) of ker M; r = q - numerical rank.
CMatrix kernel_basis(const CMatrix& m, double tol);

/// Orthonormal basis of the column space of M.
CMatrix range_basis(const CMatrix& m, double tol);

/// Classifies a Hermitian matrix. `scale` sets the magnitude that counts as
/// zero: zero iff ||M|| <= tol*scale; PSD iff min_eig >= -tol*max(scale,||M||).
/// Throws NotHermitian if ||M - M*|| > tol*max(scale,||M||).
DefinitenessReport definiteness(const CMatrix& m, double tol, double scale = 1.0);

double operator_norm(const CMatrix& m);
double smallest_singular_value(const CMatrix& m);
RVector singular_values(const CMatrix& m);

/// Number of singular values above tol * sigma_max.
Eigen::Index numerical_rank(const CMatrix& m, double tol);

/// Square or tall M has trivial kernel (sigma_min > tol*sigma_max).
bool is_injective(const CMatrix& m, double tol);

struct EigenDecomposition {
  CMatrix S;      ///< unitary, rows are eigenvectors: P = S* diag(values) S
  RVector values; ///< descending
};

/// P = S* diag(values) S with eigenvalues sorted descending. Each row of S is
/// phase-normalized so that its last entry of maximal modulus is real positive.
EigenDecomposition hermitian_eigendecomposition(const CMatrix& p);

struct Inertia {
  Eigen::Index positive = 0;
  Eigen::Index zero = 0;
  Eigen::Index negative = 0;
};

/// Eigenvalue counts above tol*||P||, within, and below.
Inertia inertia(const CMatrix& p, double tol);

/// Largest principal angle (radians) between the column spans of two
/// orthonormal bases of equal width; computed from sines for accuracy.
double max_principal_angle(const CMatrix& a, const CMatrix& b);

CMatrix hermitian_part(const CMatrix& m);

}  // namespace phwell::numlin
