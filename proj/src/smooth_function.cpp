#include "phwell/smooth_function.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace phwell {

namespace {

// Truncated Taylor series f(z0 + h) = sum_n c[n] h^n.
struct Jet {
  std::vector<double> c;

  explicit Jet(int order, double value = 0.0) : c(static_cast<std::size_t>(order) + 1, 0.0) {
    c[0] = value;
  }
  std::size_t size() const { return c.size(); }
};

Jet operator+(const Jet& a, const Jet& b) {
  Jet r = a;
  for (std::size_t n = 0; n < r.size(); ++n) r.c[n] += b.c[n];
  return r;
}

Jet operator*(const Jet& a, const Jet& b) {
  Jet r(static_cast<int>(a.size()) - 1);
  for (std::size_t n = 0; n < r.size(); ++n) {
    double s = 0.0;
    for (std::size_t k = 0; k <= n; ++k) s += a.c[k] * b.c[n - k];
    r.c[n] = s;
  }
  return r;
}

Jet reciprocal(const Jet& a) {
  Jet r(static_cast<int>(a.size()) - 1);
  r.c[0] = 1.0 / a.c[0];
  for (std::size_t n = 1; n < r.size(); ++n) {
    double s = 0.0;
    for (std::size_t k = 1; k <= n; ++k) s += a.c[k] * r.c[n - k];
    r.c[n] = -s * r.c[0];
  }
  return r;
}

Jet exp(const Jet& a) {
  Jet r(static_cast<int>(a.size()) - 1);
  r.c[0] = std::exp(a.c[0]);
  for (std::size_t n = 1; n < r.size(); ++n) {
    double s = 0.0;
    for (std::size_t k = 1; k <= n; ++k) s += static_cast<double>(k) * a.c[k] * r.c[n - k];
    r.c[n] = s / static_cast<double>(n);
  }
  return r;
}

// exp(-1/t) vanishes in double precision below this argument.
constexpr double kFlat = 1.0 / 700.0;

// sigma(t) = exp(-1/t) for t > 0, else 0, for a linear jet t.
Jet sigma(const Jet& t) {
  if (t.c[0] <= kFlat) return Jet(static_cast<int>(t.size()) - 1, 0.0);
  Jet neg_inv = reciprocal(t);
  for (double& v : neg_inv.c) v = -v;
  return exp(neg_inv);
}

// Smooth step: 0 for r <= 0, 1 for r >= 1.
Jet smooth_step(const Jet& r) {
  const int order = static_cast<int>(r.size()) - 1;
  if (r.c[0] <= kFlat) return Jet(order, 0.0);
  if (r.c[0] >= 1.0 - kFlat) return Jet(order, 1.0);
  Jet one_minus(order, 1.0 - r.c[0]);
  for (std::size_t n = 1; n < r.size(); ++n) one_minus.c[n] = -r.c[n];
  const Jet a = sigma(r);
  const Jet b = sigma(one_minus);
  return a * reciprocal(a + b);
}

Jet linear_jet(int order, double value, double slope) {
  Jet j(order, value);
  if (order >= 1) j.c[1] = slope;
  return j;
}

Jet cutoff_jet(Cutoff cutoff, double eps, double zeta, int order) {
  switch (cutoff) {
    case Cutoff::one:
      return Jet(order, 1.0);
    case Cutoff::rising: {
      const double a = 1.0 - 2.0 * eps;
      return smooth_step(linear_jet(order, (zeta - a) / eps, 1.0 / eps));
    }
    case Cutoff::falling: {
      // mirror: falling(zeta) = rising(1 - zeta)
      const double a = 1.0 - 2.0 * eps;
      return smooth_step(linear_jet(order, (1.0 - zeta - a) / eps, -1.0 / eps));
    }
    case Cutoff::interior: {
      Jet r = cutoff_jet(Cutoff::rising, eps, zeta, order);
      const Jet f = cutoff_jet(Cutoff::falling, eps, zeta, order);
      Jet out(order, 1.0);
      for (std::size_t n = 0; n < out.size(); ++n) out.c[n] -= r.c[n] + f.c[n];
      return out;
    }
  }
  return Jet(order, 0.0);
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

double binomial(int n, int k) { return factorial(n) / (factorial(k) * factorial(n - k)); }

}  // namespace

std::vector<double> cutoff_derivatives(Cutoff cutoff, double eps, double zeta, int order) {
  const Jet j = cutoff_jet(cutoff, eps, zeta, order);
  std::vector<double> out(j.size());
  for (std::size_t n = 0; n < j.size(); ++n) out[n] = j.c[n] * factorial(static_cast<int>(n));
  return out;
}

SmoothFunction::SmoothFunction(Eigen::Index dim, double eps, int derivative_order)
    : dim_(dim), eps_(eps), derivative_order_(derivative_order) {
  if (!(eps > 0.0 && eps <= 0.25)) throw std::invalid_argument("cutoff width must lie in (0, 1/4]");
}

void SmoothFunction::add_term(Cutoff cutoff, double center, std::vector<CVector> coefficients) {
  for (const auto& c : coefficients) {
    if (c.size() != dim_) throw std::invalid_argument("coefficient dimension mismatch");
  }
  terms_.push_back(Term{cutoff, center, std::move(coefficients)});
}

std::vector<CVector> SmoothFunction::derivatives(double zeta, int order) const {
  std::vector<CVector> taylor(static_cast<std::size_t>(order) + 1, CVector::Zero(dim_));
  for (const Term& term : terms_) {
    const Jet w = cutoff_jet(term.cutoff, eps_, zeta, order);
    const double offset = zeta - term.center;
    const int degree = static_cast<int>(term.coefficients.size()) - 1;
    // Taylor coefficients of the polynomial about zeta.
    std::vector<CVector> p(static_cast<std::size_t>(order) + 1, CVector::Zero(dim_));
    for (int n = 0; n <= std::min(order, degree); ++n) {
      for (int i = n; i <= degree; ++i) {
        p[n] += binomial(i, n) * std::pow(offset, i - n) * term.coefficients[i];
      }
    }
    for (int n = 0; n <= order; ++n) {
      for (int m = 0; m <= n; ++m) {
        if (w.c[m] != 0.0) taylor[n] += w.c[m] * p[n - m];
      }
    }
  }
  for (int n = 0; n <= order; ++n) taylor[n] *= factorial(n);
  return taylor;
}

std::vector<double> SmoothFunction::breakpoints() const {
  std::vector<double> pts{0.0, eps_, 2.0 * eps_, 1.0 - 2.0 * eps_, 1.0 - eps_, 1.0};
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](double a, double b) { return std::abs(a - b) < 1e-15; }),
            pts.end());
  return pts;
}

SmoothFunction boundary_interpolant(const CVector& u, const CVector& v, int order,
                                    Eigen::Index dim, double eps) {
  if (u.size() != order * dim || v.size() != order * dim) {
    throw std::invalid_argument("trace targets must have order*dim entries");
  }
  SmoothFunction x(dim, eps, order);
  std::vector<CVector> pu, pv;
  for (int i = 0; i < order; ++i) {
    const double inv = 1.0 / factorial(i);
    pu.push_back(inv * u.segment(i * dim, dim));
    pv.push_back(inv * v.segment(i * dim, dim));
  }
  x.add_term(Cutoff::rising, 1.0, std::move(pu));
  x.add_term(Cutoff::falling, 0.0, std::move(pv));
  return x;
}

SmoothFunction interior_bump(const CVector& z, int order, double eps) {
  SmoothFunction x(z.size(), eps, order);
  x.add_term(Cutoff::interior, 0.0, {z});
  return x;
}

}  // namespace phwell
