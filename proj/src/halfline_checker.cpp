#include "phwell/halfline_checker.hpp"

#include <algorithm>

#include "phwell/interval_checker.hpp"
#include "phwell/numlin.hpp"

namespace phwell {

CMatrix HalfLineDecomposition::Delta() const {
  RVector all(n1 + n2);
  all << Lambda, Theta;
  return all.cast<Complex>().asDiagonal();
}

HalfLineDecomposition decompose_P1(const CMatrix& P1, double tol) {
  const numlin::Inertia in = numlin::inertia(P1, tol);
  if (in.zero > 0) throw Error(ErrorKind::singular_p1, "P_1 has a zero eigenvalue", "P[1]");
  const numlin::EigenDecomposition eig = numlin::hermitian_eigendecomposition(P1);
  HalfLineDecomposition dec;
  dec.S = eig.S;
  dec.n1 = in.positive;
  dec.n2 = in.negative;
  dec.Lambda = eig.values.head(dec.n1);
  dec.Theta = eig.values.tail(dec.n2);
  return dec;
}

FactorizationOutcome factorize_boundary(const CMatrix& wb_hat, const HalfLineDecomposition& dec,
                                        double rank_tol) {
  FactorizationOutcome out;
  const Eigen::Index k = wb_hat.rows();
  if (numlin::numerical_rank(wb_hat, rank_tol) < k) {
    out.failure = ErrorKind::rank_deficient;
    out.message = "W_B_hat does not have full row rank";
    return out;
  }
  if (k != dec.n2) {
    out.failure = ErrorKind::wrong_row_count;
    out.message = "k = " + std::to_string(k) + " but n2 = " + std::to_string(dec.n2);
    return out;
  }
  const CMatrix T = wb_hat * dec.S.adjoint();
  BoundaryFactorization f;
  f.U1 = T.leftCols(dec.n1);
  f.U2 = T.rightCols(dec.n2);
  if (!numlin::is_injective(f.U2, rank_tol)) {
    out.failure = ErrorKind::singular_u2;
    out.message = "U2 block of W_B_hat S* is singular";
    return out;
  }
  f.B = f.U2;
  f.U = k == 0 || dec.n1 == 0 ? CMatrix::Zero(k, dec.n1) : CMatrix(f.U2.fullPivLu().solve(f.U1));
  CMatrix UI(k, dec.n1 + dec.n2);
  UI << f.U, CMatrix::Identity(k, k);
  const double scale = std::max(numlin::operator_norm(wb_hat), 1e-300);
  f.residual = k == 0 ? 0.0 : numlin::operator_norm(f.B * UI * dec.S - wb_hat) / scale;
  out.factorization = std::move(f);
  return out;
}

namespace {

struct Prepared {
  HalfLineDecomposition dec;
  CMatrix wb;  // full-row-rank boundary operator
  CMatrix P0;
  double p1_norm = 1.0;
  std::vector<std::string> warnings;
};

Prepared prepare(const PortHamiltonianSystem& sys) {
  if (sys.interval() != IntervalKind::half_line) {
    throw Error(ErrorKind::validation, "half-line analysis needs a half_line system", "interval");
  }
  Prepared p;
  const Tolerances& tol = sys.tol();
  p.dec = decompose_P1(sys.P(1), tol.rank);
  p.P0 = sys.P(0);
  p.p1_norm = numlin::operator_norm(sys.P(1));
  p.wb = sys.WB_hat();
  const Eigen::Index rank = numlin::numerical_rank(p.wb, tol.rank);
  if (rank < p.wb.rows()) {
    p.warnings.push_back("W_B_hat has rank " + std::to_string(rank) + " < " +
                         std::to_string(p.wb.rows()) + " rows; using a basis of its row space");
    p.wb = numlin::range_basis(p.wb.adjoint(), tol.rank).adjoint();
  }
  return p;
}

CMatrix kernel_P1_form(const CMatrix& wb, const CMatrix& P1, double rank_tol) {
  const CMatrix K = numlin::kernel_basis(wb, rank_tol);
  if (K.cols() == 0) return CMatrix(0, 0);
  return K.adjoint() * P1 * K;
}

void add_p0(ConditionResult& r, const ReP0Status& s) {
  r.diagnostics["max_eig_re_P0"] = s.max_eig;
  r.diagnostics["norm_re_P0"] = s.norm;
}

void finish(ConditionResult& r, bool ok, const std::string& why) {
  r.applicable = true;
  if (!ok && !why.empty()) {
    if (!r.reason.empty()) r.reason += "; ";
    r.reason += why;
  }
  r.holds = r.holds && ok;
}

ConditionResult ta3(const Prepared& p, const CMatrix& P1, const Tolerances& tol, const ReP0Status& s) {
  ConditionResult r;
  r.id = "TA.3";
  r.holds = true;
  const CMatrix G = kernel_P1_form(p.wb, P1, tol.rank);
  r.diagnostics["kernel_dim"] = static_cast<double>(G.rows());
  if (G.rows() > 0) {
    const auto rep = numlin::definiteness(G, tol.psd, p.p1_norm);
    r.diagnostics["min_eig_kernel_form"] = rep.min_eig;
    finish(r, rep.psd(), "y*P1y not nonnegative on ker W_B_hat");
  }
  add_p0(r, s);
  finish(r, s.nsd, "Re P0 not negative semidefinite");
  return r;
}

ConditionResult ta4(const Prepared& p, const Tolerances& tol, const ReP0Status& s) {
  ConditionResult r;
  r.id = "TA.4";
  if (p.wb.rows() > p.dec.n2) {
    r.applicable = false;
    r.reason = "k > n2: more boundary conditions than incoming characteristics";
    return r;
  }
  r.holds = true;
  const FactorizationOutcome f = factorize_boundary(p.wb, p.dec, tol.rank);
  if (!f.ok()) {
    finish(r, false, std::string(to_string(f.failure)) + ": " + f.message);
  } else {
    const auto& fac = *f.factorization;
    r.diagnostics["factorization_residual"] = fac.residual;
    const CMatrix M = CMatrix(p.dec.Lambda.cast<Complex>().asDiagonal()) +
                      fac.U.adjoint() * p.dec.Theta.cast<Complex>().asDiagonal() * fac.U;
    if (M.rows() > 0) {
      const auto rep = numlin::definiteness(M, tol.psd, p.p1_norm);
      r.diagnostics["min_eig_Lambda_plus_UThetaU"] = rep.min_eig;
      finish(r, rep.psd(), "Lambda + U*Theta U not positive semidefinite");
    }
  }
  add_p0(r, s);
  finish(r, s.nsd, "Re P0 not negative semidefinite");
  return r;
}

ConditionResult ta23(const Prepared& p, const CMatrix& P1, const Tolerances& tol, const ReP0Status& s) {
  ConditionResult r;
  r.id = "TA2.3";
  r.holds = true;
  const CMatrix G = kernel_P1_form(p.wb, P1, tol.rank);
  r.diagnostics["kernel_dim"] = static_cast<double>(G.rows());
  if (G.rows() > 0) {
    const double norm = numlin::operator_norm(G);
    r.diagnostics["norm_kernel_form"] = norm;
    finish(r, norm <= tol.psd * p.p1_norm, "y*P1y not zero on ker W_B_hat");
  }
  add_p0(r, s);
  finish(r, s.zero, "Re P0 not zero");
  return r;
}

ConditionResult ta24(const Prepared& p, const Tolerances& tol, const ReP0Status& s) {
  ConditionResult r;
  r.id = "TA2.4";
  const Eigen::Index k = p.wb.rows();
  if (k > std::min(p.dec.n1, p.dec.n2)) {
    r.applicable = false;
    r.reason = "k > min(n1, n2)";
    return r;
  }
  r.holds = true;
  if (k != p.dec.n1 || k != p.dec.n2) {
    finish(r, false, "k, n1, n2 not all equal");
  } else {
    const FactorizationOutcome f = factorize_boundary(p.wb, p.dec, tol.rank);
    if (!f.ok()) {
      finish(r, false, std::string(to_string(f.failure)) + ": " + f.message);
    } else {
      const auto& fac = *f.factorization;
      finish(r, numlin::is_injective(fac.U1, tol.rank), "U1 singular");
      const CMatrix M = CMatrix(p.dec.Lambda.cast<Complex>().asDiagonal()) +
                        fac.U.adjoint() * p.dec.Theta.cast<Complex>().asDiagonal() * fac.U;
      const double norm = numlin::operator_norm(M);
      r.diagnostics["norm_Lambda_plus_UThetaU"] = norm;
      finish(r, norm <= tol.psd * p.p1_norm, "Lambda + U1* U2^-* Theta U2^-1 U1 not zero");
    }
  }
  add_p0(r, s);
  finish(r, s.zero, "Re P0 not zero");
  return r;
}

Consensus contraction_consensus(const ConditionResult& c3, const ConditionResult& c4, bool* discrepancy) {
  if (!c4.applicable) return c3.holds ? Consensus::dissipative_only : Consensus::not_contraction;
  if (c3.holds != c4.holds) {
    *discrepancy = true;
    return Consensus::undetermined;
  }
  return c3.holds ? Consensus::contraction : Consensus::not_contraction;
}

UnitaryConsensus unitary_consensus(const ConditionResult& c3, const ConditionResult& c4, bool* discrepancy) {
  if (!c4.applicable) return c3.holds ? UnitaryConsensus::conservative_only : UnitaryConsensus::not_unitary;
  if (c3.holds != c4.holds) {
    *discrepancy = true;
    return UnitaryConsensus::undetermined;
  }
  return c3.holds ? UnitaryConsensus::unitary : UnitaryConsensus::not_unitary;
}

}  // namespace

Verdict check_contraction_halfline(const PortHamiltonianSystem& sys) {
  const Prepared p = prepare(sys);
  const ReP0Status s = re_P0_status(p.P0, sys.tol());
  Verdict v;
  v.warnings = p.warnings;
  v.conditions.push_back(ta3(p, sys.P(1), sys.tol(), s));
  v.conditions.push_back(ta4(p, sys.tol(), s));
  v.consensus = contraction_consensus(v.conditions[0], v.conditions[1], &v.discrepancy);
  return v;
}

Verdict check_unitary_halfline(const PortHamiltonianSystem& sys) {
  const Prepared p = prepare(sys);
  const ReP0Status s = re_P0_status(p.P0, sys.tol());
  Verdict v;
  v.warnings = p.warnings;
  v.conditions.push_back(ta23(p, sys.P(1), sys.tol(), s));
  v.conditions.push_back(ta24(p, sys.tol(), s));
  v.unitary = unitary_consensus(v.conditions[0], v.conditions[1], &v.discrepancy);
  return v;
}

Verdict analyze_halfline(const PortHamiltonianSystem& sys) {
  const Prepared p = prepare(sys);
  const ReP0Status s = re_P0_status(p.P0, sys.tol());
  Verdict v;
  v.warnings = p.warnings;
  v.conditions.push_back(ta3(p, sys.P(1), sys.tol(), s));
  v.conditions.push_back(ta4(p, sys.tol(), s));
  v.conditions.push_back(ta23(p, sys.P(1), sys.tol(), s));
  v.conditions.push_back(ta24(p, sys.tol(), s));
  v.consensus = contraction_consensus(v.conditions[0], v.conditions[1], &v.discrepancy);
  v.unitary = unitary_consensus(v.conditions[2], v.conditions[3], &v.discrepancy);
  if (v.unitary == UnitaryConsensus::unitary && v.consensus != Consensus::contraction) v.discrepancy = true;
  if (p.wb.rows() > p.dec.n2) {
    v.warnings.push_back("k = " + std::to_string(p.wb.rows()) + " exceeds n2 = " +
                         std::to_string(p.dec.n2) + "; the boundary value problem is overdetermined");
  }
  return v;
}

Verdict analyze(const PortHamiltonianSystem& sys) {
  return sys.interval() == IntervalKind::half_line ? analyze_halfline(sys) : analyze_interval(sys);
}

}  // namespace phwell
