#pragma once

#include <vector>

#include "phwell/halfline_checker.hpp"

namespace phwell {

/// Uniform grid on [0, L] with n+1 nodes.
struct UniformGrid {
  double L = 30.0;
  int n = 10000;

  double h() const { return L / n; }
  double node(int i) const { return L * i / n; }
};

/// Default horizon 30 * max(Lambda, |Theta|) and step L/10000.
UniformGrid default_resolvent_grid(const HalfLineDecomposition& dec);

struct ResolventSolution {
  std::vector<CVector> x;  ///< characteristic coordinates at the grid nodes
  double residual = 0.0;   ///< grid L2 norm of x - Delta x' - y on interior nodes
  double relative_residual = 0.0;
};

/// Solves x - Delta x' = y in characteristic coordinates, Delta = diag(Lambda, Theta),
/// with coupling x2(0) = -U x1(0). The positive block uses the integral
/// representation with exponential kernel applied to the piecewise cubic
/// interpolant of y (truncated at L);
/// the negative block integrates forward with classical RK4. y holds n+1
/// samples of dimension n1+n2. Throws GridTooCoarse when the relative
/// residual exceeds `max_relative_residual`.
ResolventSolution solve_resolvent_halfline(const HalfLineDecomposition& dec, const CMatrix& U,
                                           const std::vector<CVector>& y, const UniformGrid& grid,
                                           double max_relative_residual = 1e-3);

/// Residual of x - Delta x' - y with central differences on interior nodes.
double resolvent_residual(const HalfLineDecomposition& dec, const std::vector<CVector>& x,
                          const std::vector<CVector>& y, const UniformGrid& grid);

}  // namespace phwell
