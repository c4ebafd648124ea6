#include "phwell/numlin.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "phwell/error.hpp"

namespace phwell::numlin {

std::string_view to_string(Definiteness d) {
  switch (d) {
    case Definiteness::positive_semidefinite: return "positive_semidefinite";
    case Definiteness::negative_semidefinite: return "negative_semidefinite";
    case Definiteness::indefinite: return "indefinite";
    case Definiteness::zero: return "zero";
  }
  return "zero";
}

RVector singular_values(const CMatrix& m) {
  if (m.size() == 0) return RVector();
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues();
}

double operator_norm(const CMatrix& m) {
  const RVector s = singular_values(m);
  return s.size() == 0 ? 0.0 : s(0);
}

double smallest_singular_value(const CMatrix& m) {
  const RVector s = singular_values(m);
  if (s.size() == 0) return 0.0;
  // A wide matrix has min(rows, cols) singular values; a tall or square one
  // has a trivial kernel only if all cols are covered.
  if (m.cols() > m.rows()) return 0.0;
  return s(s.size() - 1);
}

Eigen::Index numerical_rank(const CMatrix& m, double tol) {
  const RVector s = singular_values(m);
  if (s.size() == 0 || s(0) == 0.0) return 0;
  const double cut = tol * s(0);
  return static_cast<Eigen::Index>((s.array() > cut).count());
}

bool is_injective(const CMatrix& m, double tol) {
  if (m.cols() == 0) return true;
  if (m.rows() < m.cols()) return false;
  return numerical_rank(m, tol) == m.cols();
}

CMatrix kernel_basis(const CMatrix& m, double tol) {
  const Eigen::Index q = m.cols();
  if (q == 0) return CMatrix(0, 0);
  if (m.rows() == 0) return CMatrix::Identity(q, q);
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullV);
  const RVector& s = svd.singularValues();
  Eigen::Index rank = 0;
  if (s.size() > 0 && s(0) > 0.0) rank = (s.array() > tol * s(0)).count();
  return svd.matrixV().rightCols(q - rank);
}

CMatrix range_basis(const CMatrix& m, double tol) {
  const Eigen::Index p = m.rows();
  if (p == 0 || m.cols() == 0) return CMatrix(p, 0);
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullU);
  const RVector& s = svd.singularValues();
  Eigen::Index rank = 0;
  if (s.size() > 0 && s(0) > 0.0) rank = (s.array() > tol * s(0)).count();
  return svd.matrixU().leftCols(rank);
}

CMatrix hermitian_part(const CMatrix& m) { return 0.5 * (m + m.adjoint()); }

DefinitenessReport definiteness(const CMatrix& m, double tol, double scale) {
  DefinitenessReport r;
  r.tolerance_used = tol;
  if (m.rows() != m.cols()) throw Error(ErrorKind::not_hermitian, "matrix is not square");
  if (m.size() == 0) return r;

  const double norm = operator_norm(m);
  const double ref = std::max(scale, norm);
  const double asym = operator_norm(m - m.adjoint());
  if (asym > tol * ref) {
    throw Error(ErrorKind::not_hermitian,
                "||M - M*|| = " + std::to_string(asym) + " exceeds tolerance");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(m), Eigen::EigenvaluesOnly);
  const RVector& ev = es.eigenvalues();
  r.min_eig = ev.minCoeff();
  r.max_eig = ev.maxCoeff();

  if (norm <= tol * scale) {
    r.verdict = Definiteness::zero;
  } else if (r.min_eig >= -tol * ref) {
    r.verdict = Definiteness::positive_semidefinite;
  } else if (r.max_eig <= tol * ref) {
    r.verdict = Definiteness::negative_semidefinite;
  } else {
    r.verdict = Definiteness::indefinite;
  }
  return r;
}

EigenDecomposition hermitian_eigendecomposition(const CMatrix& p) {
  EigenDecomposition out;
  const Eigen::Index d = p.rows();
  if (d == 0) {
    out.S = CMatrix(0, 0);
    out.values = RVector(0);
    return out;
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(p));
  // Eigen returns ascending eigenvalues with P = E diag E*. Sort descending,
  // keeping the solver's order inside groups of equal eigenvalues.
  std::vector<Eigen::Index> order(static_cast<std::size_t>(d));
  for (Eigen::Index j = 0; j < d; ++j) order[static_cast<std::size_t>(j)] = j;
  const RVector& asc = es.eigenvalues();
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) { return asc(a) > asc(b); });
  out.values.resize(d);
  CMatrix e(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    out.values(j) = asc(order[static_cast<std::size_t>(j)]);
    e.col(j) = es.eigenvectors().col(order[static_cast<std::size_t>(j)]);
  }

  for (Eigen::Index j = 0; j < d; ++j) {
    auto col = e.col(j);
    const double peak = col.cwiseAbs().maxCoeff();
    Eigen::Index pick = 0;
    for (Eigen::Index i = 0; i < d; ++i) {
      if (std::abs(col(i)) >= peak * (1.0 - 1e-12)) pick = i;
    }
    const Complex phase = std::conj(col(pick)) / std::abs(col(pick));
    col *= phase;
  }
  out.S = e.adjoint();
  return out;
}

Inertia inertia(const CMatrix& p, double tol) {
  Inertia in;
  if (p.size() == 0) return in;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(p), Eigen::EigenvaluesOnly);
  const RVector& ev = es.eigenvalues();
  const double cut = tol * std::max(ev.cwiseAbs().maxCoeff(), 0.0);
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) > cut) {
      ++in.positive;
    } else if (ev(i) < -cut) {
      ++in.negative;
    } else {
      ++in.zero;
    }
  }
  return in;
}

double max_principal_angle(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.cols()) return M_PI / 2;
  if (a.cols() == 0) return 0.0;
  const CMatrix residual = a - b * (b.adjoint() * a);
  const double s = std::min(1.0, operator_norm(residual));
  return std::asin(s);
}

}  // namespace phwell::numlin
