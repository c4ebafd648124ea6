#pragma once

// Algebraic contraction and unitarity tests for port-Hamiltonian systems on
// [0,1]. Condition ids:
//   T1.3  Re P0 <= 0, W1+W2 injective, W_B Sigma W_B* >= 0
//   T1.4  Re P0 <= 0, W1+W2 injective, V exists with ||V|| <= 1
//   T1.5  Re P0 <= 0, u*Qu - y*Qy <= 0 on ker W_B_hat
//   C2.6  Re P0 <= 0, W_B surjective, W_B Sigma W_B* >= 0
//   C2.7  Re P0 <= 0, W_B surjective, V exists with ||V|| <= 1
//   T3.x / C3.x  the unitary counterparts (Re P0 = 0, equalities, V unitary)
//   RANBED  ran(W1-W2) contained in ran(W1+W2)

#include <optional>
#include <vector>

#include "phwell/model.hpp"
#include "phwell/verdict.hpp"

namespace phwell {

inline const std::vector<std::string> kContractionIds = {"T1.3", "T1.4", "T1.5", "C2.6", "C2.7"};
inline const std::vector<std::string> kUnitaryIds = {"T3.3", "T3.4", "T3.5", "C3.6", "C3.7"};

/// Sign information about Re P0 = (P0 + P0*)/2, measured against max(1, ||P0||).
struct ReP0Status {
  double max_eig = 0.0;
  double norm = 0.0;
  bool nsd = true;
  bool zero = true;
};

ReP0Status re_P0_status(const CMatrix& P0, const Tolerances& tol);

/// G = K* blockdiag(Q, -Q) K for an orthonormal basis K of ker W_B_hat.
CMatrix kernel_form(const CMatrix& wb_hat, const CMatrix& Q, double rank_tol);

ConditionResult check_kernel_dissipativity(const CMatrix& wb_hat, const CMatrix& Q,
                                           const CMatrix& P0, const Tolerances& tol);
ConditionResult check_injective_psd(const CMatrix& W1, const CMatrix& W2, const CMatrix& P0,
                                    const Tolerances& tol);
/// Not applicable when V is absent.
ConditionResult check_V_contraction(const std::optional<CMatrix>& V, const CMatrix& P0,
                                    const Tolerances& tol);
ConditionResult check_surjective_psd(const CMatrix& wb_hat, const CMatrix& W1, const CMatrix& W2,
                                     const CMatrix& P0, const Tolerances& tol);
ConditionResult check_surjective_V(const CMatrix& wb_hat, const CMatrix& W1, const CMatrix& W2,
                                   const CMatrix& P0, const Tolerances& tol);
ConditionResult check_range_condition(const CMatrix& W1, const CMatrix& W2, const Tolerances& tol);

/// T3.3, T3.4, T3.5, C3.6, C3.7. Only T3.5 is applicable when W_B_hat is not Nd x 2Nd.
std::vector<ConditionResult> check_unitary_conditions(const CMatrix& wb_hat, const CMatrix& Q,
                                                      const CMatrix& W1, const CMatrix& W2,
                                                      const CMatrix& P0, const Tolerances& tol);

/// Runs every condition and sets the consensus fields. Requires a
/// unit-interval system.
Verdict analyze_interval(const PortHamiltonianSystem& sys);

}  // namespace phwell
