#pragma once

#include <vector>

#include "phwell/types.hpp"

namespace phwell {

/// C-infinity cutoff weights on [0,1] with plateau width eps.
///   rising:   0 on [0, 1-2eps], 1 on [1-eps, 1]
///   falling:  mirror image of rising
///   interior: 1 - rising - falling (compactly supported in (0,1))
enum class Cutoff { one, rising, falling, interior };

/// Exact derivatives of the cutoff weight, w^(0..order)(zeta).
std::vector<double> cutoff_derivatives(Cutoff cutoff, double eps, double zeta, int order);

/// x: [0,1] -> F^d written as a sum of cutoff(zeta) * polynomial(zeta - center).
/// Derivatives are propagated exactly through truncated Taylor arithmetic.
class SmoothFunction {
 public:
  struct Term {
    Cutoff cutoff = Cutoff::one;
    double center = 0.0;
    std::vector<CVector> coefficients;  ///< coefficient of (zeta-center)^i
  };

  SmoothFunction(Eigen::Index dim, double eps, int derivative_order);

  void add_term(Cutoff cutoff, double center, std::vector<CVector> coefficients);

  Eigen::Index dim() const { return dim_; }
  double eps() const { return eps_; }
  /// Highest derivative order this function is declared to carry.
  int derivative_order() const { return derivative_order_; }
  const std::vector<Term>& terms() const { return terms_; }

  /// x(zeta), x'(zeta), ..., x^(order)(zeta).
  std::vector<CVector> derivatives(double zeta, int order) const;
  CVector value(double zeta) const { return derivatives(zeta, 0).front(); }

  /// Sorted points in [0,1] where the cutoffs change regime; quadrature
  /// panels should not straddle them.
  std::vector<double> breakpoints() const;

 private:
  Eigen::Index dim_;
  double eps_;
  int derivative_order_;
  std::vector<Term> terms_;
};

/// Function with Phi_1(x) = u and Phi_0(x) = v exactly: rising cutoff times
/// sum_{i<order} u_{i+1}/i! (zeta-1)^i plus falling cutoff times
/// sum_{i<order} v_{i+1}/i! zeta^i. u, v hold `order` stacked blocks of size dim.
SmoothFunction boundary_interpolant(const CVector& u, const CVector& v, int order,
                                    Eigen::Index dim, double eps = 0.25);

/// z times the interior cutoff; all boundary traces vanish.
SmoothFunction interior_bump(const CVector& z, int order, double eps = 0.25);

}  // namespace phwell
