#pragma once

// Contraction and unitarity tests on [0, inf) with N = 1. Condition ids:
//   TA.3   Re P0 <= 0, y*P1y >= 0 on ker W_B_hat
//   TA.4   Re P0 <= 0, W_B_hat = B[U I]S with Lambda + U*Theta U >= 0
//   TA2.3  Re P0 = 0, y*P1y = 0 on ker W_B_hat
//   TA2.4  Re P0 = 0, k = n1 = n2, Lambda + U1* U2^{-*} Theta U2^{-1} U1 = 0

#include <optional>
#include <string>

#include "phwell/error.hpp"
#include "phwell/model.hpp"
#include "phwell/verdict.hpp"

namespace phwell {

/// P1 = S* diag(Lambda, Theta) S, positive block first.
struct HalfLineDecomposition {
  CMatrix S;
  RVector Lambda;  ///< positive eigenvalues, descending
  RVector Theta;   ///< negative eigenvalues, descending
  Eigen::Index n1 = 0;
  Eigen::Index n2 = 0;

  CMatrix Delta() const;
};

/// Throws SingularP1 when P1 has an eigenvalue within tol*||P1|| of zero.
HalfLineDecomposition decompose_P1(const CMatrix& P1, double tol = 1e-10);

struct BoundaryFactorization {
  CMatrix B;  ///< k x k
  CMatrix U;  ///< n2 x n1
  CMatrix U1; ///< k x n1 block of W_B_hat S*
  CMatrix U2; ///< k x n2 block of W_B_hat S*
  double residual = 0.0;  ///< ||B[U I]S - W_B_hat|| / ||W_B_hat||
};

struct FactorizationOutcome {
  std::optional<BoundaryFactorization> factorization;
  ErrorKind failure = ErrorKind::validation;  ///< wrong_row_count, singular_u2 or rank_deficient
  std::string message;

  bool ok() const { return factorization.has_value(); }
};

FactorizationOutcome factorize_boundary(const CMatrix& wb_hat, const HalfLineDecomposition& dec,
                                        double rank_tol = 1e-10);

/// TA.3 and TA.4 with consensus contraction / not_contraction / dissipative_only.
Verdict check_contraction_halfline(const PortHamiltonianSystem& sys);

/// TA2.3 and TA2.4 with the unitary consensus.
Verdict check_unitary_halfline(const PortHamiltonianSystem& sys);

/// Both families merged; discrepancy also set if unitary but not contraction.
Verdict analyze_halfline(const PortHamiltonianSystem& sys);

/// Dispatches on the interval kind.
Verdict analyze(const PortHamiltonianSystem& sys);

}  // namespace phwell
