#include "phwell/resolvent.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace phwell {

namespace {

double grid_l2(const std::vector<CVector>& f, double h, std::size_t first, std::size_t last) {
  double s = 0.0;
  for (std::size_t i = first; i < last; ++i) s += f[i].squaredNorm();
  return std::sqrt(h * s);
}

// Four-node stencil containing [i, i+1], shifted inside the grid.
std::size_t stencil_start(std::size_t i, std::size_t n) { return std::min(i == 0 ? 0 : i - 1, n - 3); }

double lagrange(int a, double t) {
  double w = 1.0;
  for (int b = 0; b < 4; ++b) {
    if (b != a) w *= (t - b) / static_cast<double>(a - b);
  }
  return w;
}

// Cubic Lagrange interpolation of component j at node i + 1/2.
Complex midpoint(const std::vector<CVector>& y, std::size_t i, Eigen::Index j) {
  const std::size_t n = y.size() - 1;
  if (n < 3) return 0.5 * (y[i](j) + y[i + 1](j));
  const std::size_t s = stencil_start(i, n);
  const double t = static_cast<double>(i) + 0.5 - static_cast<double>(s);
  Complex acc = 0.0;
  for (int a = 0; a < 4; ++a) acc += lagrange(a, t) * y[s + static_cast<std::size_t>(a)](j);
  return acc;
}

// Weights c[o][a] with int_0^h e^{-s/lam}/lam p(s) ds = sum_a c[o][a] y[start + a],
// p the cubic through the stencil and o the offset of the cell inside it.
// Four-point Gauss-Legendre in s.
std::array<std::array<double, 4>, 3> exponential_weights(double h, double lam) {
  static constexpr double kNodes[4] = {-0.8611363115940526, -0.3399810435848563, 0.3399810435848563,
                                       0.8611363115940526};
  static constexpr double kWeights[4] = {0.3478548451374538, 0.6521451548625461, 0.6521451548625461,
                                         0.3478548451374538};
  std::array<std::array<double, 4>, 3> c{};
  for (int o = 0; o < 3; ++o) {
    for (int g = 0; g < 4; ++g) {
      const double xi = 0.5 * (kNodes[g] + 1.0);
      const double w = 0.5 * kWeights[g] * h * std::exp(-xi * h / lam) / lam;
      for (int a = 0; a < 4; ++a) c[o][a] += w * lagrange(a, o + xi);
    }
  }
  return c;
}

}  // namespace

UniformGrid default_resolvent_grid(const HalfLineDecomposition& dec) {
  double scale = 0.0;
  if (dec.Lambda.size() > 0) scale = std::max(scale, dec.Lambda.maxCoeff());
  if (dec.Theta.size() > 0) scale = std::max(scale, dec.Theta.cwiseAbs().maxCoeff());
  UniformGrid g;
  g.L = 30.0 * std::max(scale, 1e-12);
  g.n = 10000;
  return g;
}

double resolvent_residual(const HalfLineDecomposition& dec, const std::vector<CVector>& x,
                          const std::vector<CVector>& y, const UniformGrid& grid) {
  const std::size_t n = x.size() - 1;
  const double h = grid.h();
  RVector delta(dec.n1 + dec.n2);
  delta << dec.Lambda, dec.Theta;
  std::vector<CVector> r(x.size(), CVector::Zero(delta.size()));
  for (std::size_t i = 1; i < n; ++i) {
    const CVector dx = (x[i + 1] - x[i - 1]) / (2.0 * h);
    r[i] = x[i] - delta.cast<Complex>().cwiseProduct(dx) - y[i];
  }
  return grid_l2(r, h, 1, n);
}

ResolventSolution solve_resolvent_halfline(const HalfLineDecomposition& dec, const CMatrix& U,
                                           const std::vector<CVector>& y, const UniformGrid& grid,
                                           double max_relative_residual) {
  const Eigen::Index d = dec.n1 + dec.n2;
  const std::size_t n = static_cast<std::size_t>(grid.n);
  if (y.size() != n + 1) throw Error(ErrorKind::shape, "right-hand side needs n+1 samples", "y");
  for (const auto& yi : y) {
    if (yi.size() != d) throw Error(ErrorKind::shape, "right-hand side has the wrong dimension", "y");
  }
  const double h = grid.h();
  ResolventSolution sol;
  sol.x.assign(n + 1, CVector::Zero(d));

  // x(t) = int_0^inf e^{-s/lambda}/lambda y(s+t) ds, evaluated backwards from x(L) = 0
  // with y replaced by its piecewise cubic interpolant.
  for (Eigen::Index j = 0; j < dec.n1; ++j) {
    const double lam = dec.Lambda(j);
    const double decay = std::exp(-h / lam);
    if (n < 3) {
      const double w = h / (2.0 * lam);
      for (std::size_t i = n; i-- > 0;) {
        sol.x[i](j) = decay * sol.x[i + 1](j) + w * (y[i](j) + decay * y[i + 1](j));
      }
      continue;
    }
    const auto c = exponential_weights(h, lam);
    for (std::size_t i = n; i-- > 0;) {
      const std::size_t st = stencil_start(i, n);
      const auto& w = c[i - st];
      Complex acc = decay * sol.x[i + 1](j);
      for (int a = 0; a < 4; ++a) acc += w[a] * y[st + static_cast<std::size_t>(a)](j);
      sol.x[i](j) = acc;
    }
  }

  // x' = (x - y)/theta, theta < 0, forward from x2(0) = -U x1(0).
  if (dec.n2 > 0) {
    CVector x10 = sol.x[0].head(dec.n1);
    const CVector x20 = dec.n1 > 0 ? CVector(-U * x10) : CVector::Zero(dec.n2);
    sol.x[0].tail(dec.n2) = x20;
    for (Eigen::Index j = 0; j < dec.n2; ++j) {
      const Eigen::Index c = dec.n1 + j;
      const double theta = dec.Theta(j);
      auto f = [theta](Complex x, Complex yv) { return (x - yv) / theta; };
      for (std::size_t i = 0; i < n; ++i) {
        const Complex x0 = sol.x[i](c);
        const Complex ya = y[i](c);
        const Complex ym = midpoint(y, i, c);
        const Complex yb = y[i + 1](c);
        const Complex k1 = f(x0, ya);
        const Complex k2 = f(x0 + 0.5 * h * k1, ym);
        const Complex k3 = f(x0 + 0.5 * h * k2, ym);
        const Complex k4 = f(x0 + h * k3, yb);
        sol.x[i + 1](c) = x0 + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      }
    }
  }

  sol.residual = resolvent_residual(dec, sol.x, y, grid);
  const double ynorm = grid_l2(y, h, 0, n + 1);
  sol.relative_residual = ynorm > 0.0 ? sol.residual / ynorm : sol.residual;
  if (sol.relative_residual > max_relative_residual) {
    throw Error(ErrorKind::grid_too_coarse,
                "relative residual " + std::to_string(sol.relative_residual) + "; refine the grid");
  }
  return sol;
}

}  // namespace phwell
