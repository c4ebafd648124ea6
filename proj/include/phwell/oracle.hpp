#pragma once

// Brute-force dissipativity check on [0,1] that does not use the algebraic
// conditions: Re<Ax,x> is integrated by Gauss-Legendre quadrature over
// smooth functions whose boundary traces lie in ker W_B_hat. H is taken as
// the identity; the oracle works on A itself.

#include <cstdint>
#include <optional>
#include <string>

#include "phwell/model.hpp"
#include "phwell/smooth_function.hpp"

namespace phwell {

/// Composite 20-point Gauss-Legendre nodes and weights on [0,1]. Each panel
/// between consecutive breakpoints is split into `subpanels` pieces.
struct QuadratureNodes {
  std::vector<double> nodes;
  std::vector<double> weights;
};

QuadratureNodes composite_gauss(const std::vector<double>& breakpoints, int subpanels);

/// Re int_0^1 x* (sum_k P_k x^(k)) dzeta. Throws OrderError when x carries
/// fewer than N derivatives.
double quadrature_rayleigh(const PortHamiltonianSystem& sys, const SmoothFunction& x, int subpanels = 8);

/// 1/2 (Phi_1* Q Phi_1 - Phi_0* Q Phi_0) + Re<P0 x, x>, the last term by quadrature.
double boundary_form_value(const PortHamiltonianSystem& sys, const SmoothFunction& x, int subpanels = 8);

struct OracleWitness {
  CVector trace;  ///< [Phi_1; Phi_0] of the function, or the bump direction for P0
  double value = 0.0;
  std::string source;  ///< "kernel_sample", "kernel_form" or "interior_bump"
};

struct OracleReport {
  bool holds = true;
  int samples_drawn = 0;
  int kernel_dim = 0;
  double max_boundary_value = 0.0;  ///< max over samples of Re<(A-P0)x,x> / |c|^2
  double max_full_value = 0.0;      ///< max over samples of Re<Ax,x> / |c|^2
  double assembled_max_eig = 0.0;   ///< quadrature-assembled kernel form, largest eigenvalue
  double bump_max_value = 0.0;      ///< max over interior bumps of Re<P0 x,x>/||x||^2
  double max_mismatch = 0.0;        ///< largest |rayleigh - boundary form| over samples
  bool consistent = true;           ///< max_mismatch <= 1e-8
  double tolerance = 0.0;
  std::optional<OracleWitness> witness;

  std::string to_json(int indent = 2) const;
};

/// Draws n_samples random unit coefficient vectors in ker W_B_hat, builds the
/// interpolants and integrates. Dissipativity is decided as
/// [boundary part <= tol on the kernel] and [Re P0 <= tol on interior bumps],
/// both through quadrature. On the half-line the sampled functions carry the
/// kernel vector as x(0) and vanish near 1. Deterministic in `seed`.
OracleReport dissipativity_oracle(const PortHamiltonianSystem& sys, int n_samples, std::uint64_t seed,
                                  double tol = 1e-9);

}  // namespace phwell
