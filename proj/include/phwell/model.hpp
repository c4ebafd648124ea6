#pragma once

#include <optional>
#include <string>
#include <vector>

#include "phwell/hamiltonian.hpp"
#include "phwell/types.hpp"

namespace phwell {

class SmoothFunction;

/// Unvalidated system data as read from a config or produced by a builder.
struct SystemDescription {
  Field field = Field::complex;
  IntervalKind interval = IntervalKind::unit_interval;
  int order_N = 1;
  int dim_d = 1;
  std::vector<CMatrix> P;  ///< P_0..P_N
  HamiltonianDensity H;
  CMatrix WB_hat;
  Tolerances tol;
};

/// Validated system: x' = sum_k P_k d^k/dzeta^k (H x), W_B_hat Phi(Hx) = 0.
/// Immutable once constructed.
class PortHamiltonianSystem {
 public:
  const SystemDescription& description() const { return desc_; }
  Field field() const { return desc_.field; }
  IntervalKind interval() const { return desc_.interval; }
  int N() const { return desc_.order_N; }
  int d() const { return desc_.dim_d; }
  const std::vector<CMatrix>& P() const { return desc_.P; }
  const CMatrix& P(int k) const { return desc_.P.at(static_cast<std::size_t>(k)); }
  const HamiltonianDensity& H() const { return desc_.H; }
  const CMatrix& WB_hat() const { return desc_.WB_hat; }
  const Tolerances& tol() const { return desc_.tol; }

  /// Coercivity bounds of H over all stored samples.
  double h_min() const { return h_min_; }
  double h_max() const { return h_max_; }

  /// Copy with a different boundary operator, revalidated.
  PortHamiltonianSystem with_boundary(CMatrix wb_hat) const;
  /// Copy with a different P_0, revalidated.
  PortHamiltonianSystem with_P0(CMatrix p0) const;

 private:
  friend PortHamiltonianSystem validate_system(const SystemDescription& raw);
  SystemDescription desc_;
  double h_min_ = 1.0;
  double h_max_ = 1.0;
};

/// Checks symmetry of P_k, invertibility of P_N, coercivity of H, and the
/// shape of W_B_hat. Throws Error with a field path on failure.
PortHamiltonianSystem validate_system(const SystemDescription& raw);

/// Q_{ij} = (-1)^{i-1} P_{i+j-1} for i+j <= N+1, zero otherwise (1-based
/// blocks). `P` holds P_0..P_N; P_0 is ignored.
CMatrix build_Q(const std::vector<CMatrix>& P);

struct BoundaryOperator {
  CMatrix WB_hat;
  CMatrix Q;
  CMatrix W1;
  CMatrix W2;
  std::optional<CMatrix> V;  ///< (W1+W2)^{-1}(W1-W2) when W1+W2 is invertible
};

/// [W1 W2] = W_B_hat [Q -Q; I I]^{-1}, using the inverse 1/2 [Q^{-1} I; -Q^{-1} I].
/// Throws SingularQ when Q is not invertible.
std::pair<CMatrix, CMatrix> split_boundary_operator(const CMatrix& wb_hat, const CMatrix& Q,
                                                    double rank_tol = 1e-10);

/// [W1 W2] [Q -Q; I I].
CMatrix reconstruct_boundary_operator(const CMatrix& W1, const CMatrix& W2, const CMatrix& Q);

/// W_B Sigma W_B* = W2 W1* + W1 W2*.
CMatrix sigma_form(const CMatrix& W1, const CMatrix& W2);

/// V = (W1+W2)^{-1}(W1-W2), or nullopt when W1+W2 is not square and invertible.
std::optional<CMatrix> extract_V(const CMatrix& W1, const CMatrix& W2, double rank_tol);

/// Q, W1, W2 and V for a unit-interval system.
BoundaryOperator make_boundary_operator(const PortHamiltonianSystem& sys);

/// Phi_1 = [x(1); x'(1); ...], Phi_0 likewise at zeta=0. Each has N*d entries.
struct BoundaryTrace {
  CVector phi1;
  CVector phi0;

  /// [Phi_1; Phi_0]
  CVector stacked() const;
};

/// Throws OrderError if x is declared with fewer than N-1 derivatives.
BoundaryTrace boundary_trace(const SmoothFunction& x, int N, int d);

struct PortVariables {
  CVector f_boundary;  ///< Q(Phi_1 - Phi_0)/sqrt 2
  CVector e_boundary;  ///< (Phi_1 + Phi_0)/sqrt 2
};

PortVariables port_variables(const BoundaryTrace& trace, const CMatrix& Q);

/// (1/sqrt 2) [Q -Q; I I] and its closed-form inverse (1/sqrt 2) [Q^{-1} I; -Q^{-1} I].
CMatrix port_map(const CMatrix& Q);
CMatrix port_map_inverse(const CMatrix& Q);

}  // namespace phwell
