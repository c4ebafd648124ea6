#include "phwell/model.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "phwell/error.hpp"
#include "phwell/numlin.hpp"
#include "phwell/smooth_function.hpp"

namespace phwell {

namespace {

std::string index_path(const char* name, std::size_t i) {
  return std::string(name) + "[" + std::to_string(i) + "]";
}

void require_shape(const CMatrix& m, Eigen::Index rows, Eigen::Index cols, const std::string& path) {
  if (m.rows() != rows || m.cols() != cols) {
    throw Error(ErrorKind::shape,
                "expected " + std::to_string(rows) + "x" + std::to_string(cols) + ", got " +
                    std::to_string(m.rows()) + "x" + std::to_string(m.cols()),
                path);
  }
}

void require_real(const CMatrix& m, const std::string& path) {
  if (m.size() > 0 && m.imag().cwiseAbs().maxCoeff() > 0.0) {
    throw Error(ErrorKind::structure, "complex entry in a real-field system", path);
  }
}

}  // namespace

PortHamiltonianSystem validate_system(const SystemDescription& raw) {
  const int N = raw.order_N;
  const int d = raw.dim_d;
  if (N < 1) throw Error(ErrorKind::shape, "order must be positive", "N");
  if (d < 1) throw Error(ErrorKind::shape, "dimension must be positive", "d");
  if (raw.P.size() != static_cast<std::size_t>(N) + 1) {
    throw Error(ErrorKind::shape, "expected N+1 matrices P_0..P_N", "P");
  }
  if (raw.interval == IntervalKind::half_line && N != 1) {
    throw Error(ErrorKind::structure, "half-line systems must have N = 1", "N");
  }
  const Tolerances& tol = raw.tol;

  for (std::size_t k = 0; k < raw.P.size(); ++k) {
    const std::string path = index_path("P", k);
    require_shape(raw.P[k], d, d, path);
    if (raw.field == Field::real) require_real(raw.P[k], path);
    if (k == 0) continue;
    // P_k* = (-1)^{k+1} P_k
    const double sign = (k % 2 == 1) ? 1.0 : -1.0;
    const double defect = numlin::operator_norm(raw.P[k].adjoint() - sign * raw.P[k]);
    const double scale = std::max(numlin::operator_norm(raw.P[k]), 1e-300);
    if (defect > tol.structure * scale) {
      throw Error(ErrorKind::structure,
                  "P_k* = (-1)^(k+1) P_k violated, defect " + std::to_string(defect), path);
    }
  }

  const CMatrix& PN = raw.P.back();
  const double smax = numlin::operator_norm(PN);
  if (smax == 0.0 || numlin::smallest_singular_value(PN) < tol.rank * smax) {
    throw Error(ErrorKind::singular_pn, "P_N is not invertible", index_path("P", raw.P.size() - 1));
  }
  if (raw.interval == IntervalKind::half_line) {
    const numlin::Inertia in = numlin::inertia(raw.P[1], tol.rank);
    if (in.zero > 0) throw Error(ErrorKind::singular_p1, "P_1 has a zero eigenvalue", "P[1]");
  }

  PortHamiltonianSystem sys;
  sys.h_min_ = std::numeric_limits<double>::infinity();
  sys.h_max_ = 0.0;
  const auto& samples = raw.H.samples();
  if (samples.empty()) throw Error(ErrorKind::shape, "no Hamiltonian samples", "H");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const std::string path = "H.data" + (samples.size() > 1 ? "[" + std::to_string(i) + "]" : "");
    require_shape(samples[i], d, d, path);
    if (raw.field == Field::real) require_real(samples[i], path);
    const double nh = numlin::operator_norm(samples[i]);
    if (numlin::operator_norm(samples[i] - samples[i].adjoint()) > tol.structure * std::max(nh, 1e-300)) {
      throw Error(ErrorKind::structure, "H sample is not Hermitian", path);
    }
    const Eigen::SelfAdjointEigenSolver<CMatrix> es(numlin::hermitian_part(samples[i]));
    const double lo = es.eigenvalues().minCoeff();
    const double hi = es.eigenvalues().maxCoeff();
    if (!(lo >= tol.pd) || !std::isfinite(hi)) {
      throw Error(ErrorKind::h_not_coercive,
                  "minimum eigenvalue " + std::to_string(lo) + " below threshold", path);
    }
    sys.h_min_ = std::min(sys.h_min_, lo);
    sys.h_max_ = std::max(sys.h_max_, hi);
  }
  if (raw.H.kind() == HamiltonianDensity::Kind::piecewise) {
    const auto& bp = raw.H.breakpoints();
    for (std::size_t i = 1; i < bp.size(); ++i) {
      if (!(bp[i] > bp[i - 1])) throw Error(ErrorKind::shape, "breakpoints must increase", "H.data.breakpoints");
    }
  }

  const Eigen::Index width = raw.interval == IntervalKind::unit_interval ? 2 * N * d : d;
  if (raw.WB_hat.cols() != width) {
    throw Error(ErrorKind::shape,
                "expected width " + std::to_string(width) + ", got " + std::to_string(raw.WB_hat.cols()),
                "WB_hat");
  }
  if (raw.field == Field::real) require_real(raw.WB_hat, "WB_hat");

  sys.desc_ = raw;
  return sys;
}

PortHamiltonianSystem PortHamiltonianSystem::with_boundary(CMatrix wb_hat) const {
  SystemDescription raw = desc_;
  raw.WB_hat = std::move(wb_hat);
  return validate_system(raw);
}

PortHamiltonianSystem PortHamiltonianSystem::with_P0(CMatrix p0) const {
  SystemDescription raw = desc_;
  raw.P.at(0) = std::move(p0);
  return validate_system(raw);
}

CMatrix build_Q(const std::vector<CMatrix>& P) {
  const int N = static_cast<int>(P.size()) - 1;
  const Eigen::Index d = P.at(0).rows();
  CMatrix Q = CMatrix::Zero(N * d, N * d);
  for (int i = 1; i <= N; ++i) {
    for (int j = 1; i + j <= N + 1; ++j) {
      const double sign = (i % 2 == 1) ? 1.0 : -1.0;
      Q.block((i - 1) * d, (j - 1) * d, d, d) = sign * P[static_cast<std::size_t>(i + j - 1)];
    }
  }
  return Q;
}

std::pair<CMatrix, CMatrix> split_boundary_operator(const CMatrix& wb_hat, const CMatrix& Q,
                                                    double rank_tol) {
  const Eigen::Index n = Q.rows();
  if (wb_hat.cols() != 2 * n) throw Error(ErrorKind::shape, "boundary operator width must be 2Nd", "WB_hat");
  const double smax = numlin::operator_norm(Q);
  if (smax == 0.0 || numlin::smallest_singular_value(Q) < rank_tol * smax) {
    throw Error(ErrorKind::singular_q, "Q is not invertible");
  }
  const CMatrix Qinv = Q.fullPivLu().inverse();
  const CMatrix W1hat = wb_hat.leftCols(n);
  const CMatrix W2hat = wb_hat.rightCols(n);
  CMatrix W1 = 0.5 * (W1hat - W2hat) * Qinv;
  CMatrix W2 = 0.5 * (W1hat + W2hat);
  return {std::move(W1), std::move(W2)};
}

CMatrix reconstruct_boundary_operator(const CMatrix& W1, const CMatrix& W2, const CMatrix& Q) {
  CMatrix out(W1.rows(), 2 * Q.cols());
  out.leftCols(Q.cols()) = W1 * Q + W2;
  out.rightCols(Q.cols()) = -W1 * Q + W2;
  return out;
}

CMatrix sigma_form(const CMatrix& W1, const CMatrix& W2) {
  return W2 * W1.adjoint() + W1 * W2.adjoint();
}

std::optional<CMatrix> extract_V(const CMatrix& W1, const CMatrix& W2, double rank_tol) {
  const CMatrix sum = W1 + W2;
  if (sum.rows() != sum.cols()) return std::nullopt;
  if (!numlin::is_injective(sum, rank_tol)) return std::nullopt;
  return CMatrix(sum.fullPivLu().solve(W1 - W2));
}

BoundaryOperator make_boundary_operator(const PortHamiltonianSystem& sys) {
  BoundaryOperator op;
  op.WB_hat = sys.WB_hat();
  op.Q = build_Q(sys.P());
  auto [W1, W2] = split_boundary_operator(op.WB_hat, op.Q, sys.tol().rank);
  op.W1 = std::move(W1);
  op.W2 = std::move(W2);
  op.V = extract_V(op.W1, op.W2, sys.tol().rank);
  return op;
}

CVector BoundaryTrace::stacked() const {
  CVector out(phi1.size() + phi0.size());
  out << phi1, phi0;
  return out;
}

BoundaryTrace boundary_trace(const SmoothFunction& x, int N, int d) {
  if (x.derivative_order() < N - 1) {
    throw Error(ErrorKind::order, "function carries " + std::to_string(x.derivative_order()) +
                                      " derivatives, traces need " + std::to_string(N - 1));
  }
  if (x.dim() != d) throw Error(ErrorKind::shape, "function dimension differs from d");
  BoundaryTrace t;
  t.phi1.resize(N * d);
  t.phi0.resize(N * d);
  const auto at1 = x.derivatives(1.0, N - 1);
  const auto at0 = x.derivatives(0.0, N - 1);
  for (int i = 0; i < N; ++i) {
    t.phi1.segment(i * d, d) = at1[static_cast<std::size_t>(i)];
    t.phi0.segment(i * d, d) = at0[static_cast<std::size_t>(i)];
  }
  return t;
}

PortVariables port_variables(const BoundaryTrace& trace, const CMatrix& Q) {
  const double r = 1.0 / std::sqrt(2.0);
  return PortVariables{r * (Q * (trace.phi1 - trace.phi0)), r * (trace.phi1 + trace.phi0)};
}

CMatrix port_map(const CMatrix& Q) {
  const Eigen::Index n = Q.rows();
  CMatrix R(2 * n, 2 * n);
  const CMatrix I = CMatrix::Identity(n, n);
  R << Q, -Q, I, I;
  return R / std::sqrt(2.0);
}

CMatrix port_map_inverse(const CMatrix& Q) {
  const Eigen::Index n = Q.rows();
  const CMatrix Qinv = Q.fullPivLu().inverse();
  CMatrix R(2 * n, 2 * n);
  const CMatrix I = CMatrix::Identity(n, n);
  R << Qinv, I, -Qinv, I;
  return R / std::sqrt(2.0);
}

}  // namespace phwell
