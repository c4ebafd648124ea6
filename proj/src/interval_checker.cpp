#include "phwell/interval_checker.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "phwell/error.hpp"
#include "phwell/numlin.hpp"

namespace phwell {

namespace {

// Collects the failing conjuncts of a condition into its reason string.
class Conjunction {
 public:
  void require(bool ok, const char* what) {
    if (ok) return;
    holds_ = false;
    if (!reason_.empty()) reason_ += "; ";
    reason_ += what;
  }
  void finish(ConditionResult& r) const {
    r.applicable = true;
    r.holds = holds_;
    r.reason = reason_;
  }

 private:
  bool holds_ = true;
  std::string reason_;
};

ConditionResult not_applicable(const char* id, const char* reason) {
  ConditionResult r;
  r.id = id;
  r.applicable = false;
  r.reason = reason;
  return r;
}

bool is_square_case(const CMatrix& W1) { return W1.rows() == W1.cols(); }

double stacked_scale(const CMatrix& W1, const CMatrix& W2) {
  CMatrix w(W1.rows(), W1.cols() + W2.cols());
  w << W1, W2;
  const double n = numlin::operator_norm(w);
  return n * n;
}

void add_re_P0(ConditionResult& r, const ReP0Status& s) {
  r.diagnostics["max_eig_re_P0"] = s.max_eig;
  r.diagnostics["norm_re_P0"] = s.norm;
}

bool surjective(const CMatrix& wb_hat, double rank_tol) {
  return numlin::numerical_rank(wb_hat, rank_tol) == wb_hat.rows();
}

double unitarity_defect(const CMatrix& V) {
  return numlin::operator_norm(V.adjoint() * V - CMatrix::Identity(V.cols(), V.cols()));
}

double factorization_residual(const CMatrix& W1, const CMatrix& W2, const CMatrix& V) {
  const Eigen::Index n = V.rows();
  const CMatrix I = CMatrix::Identity(n, n);
  CMatrix target(W1.rows(), 2 * n);
  target << W1, W2;
  CMatrix right(n, 2 * n);
  right << I + V, I - V;
  const CMatrix fact = 0.5 * (W1 + W2) * right;
  return numlin::operator_norm(fact - target) / std::max(numlin::operator_norm(target), 1e-300);
}

}  // namespace

ReP0Status re_P0_status(const CMatrix& P0, const Tolerances& tol) {
  ReP0Status s;
  const double scale = std::max(1.0, numlin::operator_norm(P0));
  const numlin::DefinitenessReport rep = numlin::definiteness(numlin::hermitian_part(P0), tol.psd, scale);
  s.max_eig = rep.max_eig;
  s.norm = numlin::operator_norm(numlin::hermitian_part(P0));
  s.nsd = rep.nsd();
  s.zero = rep.is_zero();
  return s;
}

CMatrix kernel_form(const CMatrix& wb_hat, const CMatrix& Q, double rank_tol) {
  const Eigen::Index n = Q.rows();
  const CMatrix K = numlin::kernel_basis(wb_hat, rank_tol);
  if (K.cols() == 0) return CMatrix(0, 0);
  return K.topRows(n).adjoint() * Q * K.topRows(n) - K.bottomRows(n).adjoint() * Q * K.bottomRows(n);
}

ConditionResult check_kernel_dissipativity(const CMatrix& wb_hat, const CMatrix& Q,
                                           const CMatrix& P0, const Tolerances& tol) {
  ConditionResult r;
  r.id = "T1.5";
  const CMatrix G = kernel_form(wb_hat, Q, tol.rank);
  const ReP0Status p0 = re_P0_status(P0, tol);
  r.diagnostics["kernel_dim"] = static_cast<double>(G.rows());
  Conjunction c;
  if (G.rows() > 0) {
    const auto rep = numlin::definiteness(G, tol.psd, numlin::operator_norm(Q));
    r.diagnostics["max_eig_kernel_form"] = rep.max_eig;
    r.diagnostics["min_eig_kernel_form"] = rep.min_eig;
    c.require(rep.nsd(), "kernel form not negative semidefinite");
  }
  c.require(p0.nsd, "Re P0 not negative semidefinite");
  add_re_P0(r, p0);
  c.finish(r);
  return r;
}

ConditionResult check_injective_psd(const CMatrix& W1, const CMatrix& W2, const CMatrix& P0,
                                    const Tolerances& tol) {
  if (!is_square_case(W1)) return not_applicable("T1.3", "k != Nd");
  ConditionResult r;
  r.id = "T1.3";
  const CMatrix sum = W1 + W2;
  const auto form = numlin::definiteness(sigma_form(W1, W2), tol.psd, stacked_scale(W1, W2));
  const ReP0Status p0 = re_P0_status(P0, tol);
  r.diagnostics["sigma_min_W1_plus_W2"] = numlin::smallest_singular_value(sum);
  r.diagnostics["sigma_max_W1_plus_W2"] = numlin::operator_norm(sum);
  r.diagnostics["min_eig_sigma_form"] = form.min_eig;
  add_re_P0(r, p0);
  Conjunction c;
  c.require(numlin::is_injective(sum, tol.rank), "W1+W2 not injective");
  c.require(form.psd(), "W_B Sigma W_B* not positive semidefinite");
  c.require(p0.nsd, "Re P0 not negative semidefinite");
  c.finish(r);
  return r;
}

ConditionResult check_V_contraction(const std::optional<CMatrix>& V, const CMatrix& P0,
                                    const Tolerances& tol) {
  if (!V) return not_applicable("T1.4", "W1+W2 not invertible, V does not exist");
  ConditionResult r;
  r.id = "T1.4";
  const double norm = numlin::operator_norm(*V);
  const ReP0Status p0 = re_P0_status(P0, tol);
  r.diagnostics["norm_V"] = norm;
  add_re_P0(r, p0);
  Conjunction c;
  c.require(norm <= 1.0 + tol.v_slack, "||V|| > 1");
  c.require(p0.nsd, "Re P0 not negative semidefinite");
  c.finish(r);
  return r;
}

ConditionResult check_surjective_psd(const CMatrix& wb_hat, const CMatrix& W1, const CMatrix& W2,
                                     const CMatrix& P0, const Tolerances& tol) {
  if (!is_square_case(W1)) return not_applicable("C2.6", "k != Nd");
  ConditionResult r;
  r.id = "C2.6";
  const auto form = numlin::definiteness(sigma_form(W1, W2), tol.psd, stacked_scale(W1, W2));
  const ReP0Status p0 = re_P0_status(P0, tol);
  r.diagnostics["rank_WB"] = static_cast<double>(numlin::numerical_rank(wb_hat, tol.rank));
  r.diagnostics["min_eig_sigma_form"] = form.min_eig;
  add_re_P0(r, p0);
  Conjunction c;
  c.require(surjective(wb_hat, tol.rank), "W_B not surjective");
  c.require(form.psd(), "W_B Sigma W_B* not positive semidefinite");
  c.require(p0.nsd, "Re P0 not negative semidefinite");
  c.finish(r);
  return r;
}

ConditionResult check_surjective_V(const CMatrix& wb_hat, const CMatrix& W1, const CMatrix& W2,
                                   const CMatrix& P0, const Tolerances& tol) {
  if (!is_square_case(W1)) return not_applicable("C2.7", "k != Nd");
  ConditionResult r;
  r.id = "C2.7";
  const ReP0Status p0 = re_P0_status(P0, tol);
  const std::optional<CMatrix> V = extract_V(W1, W2, tol.rank);
  r.diagnostics["rank_WB"] = static_cast<double>(numlin::numerical_rank(wb_hat, tol.rank));
  add_re_P0(r, p0);
  Conjunction c;
  c.require(surjective(wb_hat, tol.rank), "W_B not surjective");
  c.require(V.has_value(), "no factorization W_B = (W1+W2)/2 [I+V I-V]");
  if (V) {
    const double norm = numlin::operator_norm(*V);
    r.diagnostics["norm_V"] = norm;
    r.diagnostics["factorization_residual"] = factorization_residual(W1, W2, *V);
    c.require(norm <= 1.0 + tol.v_slack, "||V|| > 1");
  }
  c.require(p0.nsd, "Re P0 not negative semidefinite");
  c.finish(r);
  return r;
}

ConditionResult check_range_condition(const CMatrix& W1, const CMatrix& W2, const Tolerances& tol) {
  ConditionResult r;
  r.id = "RANBED";
  const CMatrix sum = W1 + W2;
  const CMatrix diff = W1 - W2;
  CMatrix both(sum.rows(), sum.cols() + diff.cols());
  both << sum, diff;
  // One absolute cut for both ranks so the comparison is consistent.
  const double cut = tol.rank * std::max(numlin::operator_norm(sum), numlin::operator_norm(diff));
  auto rank = [cut](const CMatrix& m) {
    const RVector s = numlin::singular_values(m);
    return static_cast<double>((s.array() > cut).count());
  };
  const double rs = rank(sum);
  const double rb = rank(both);
  r.diagnostics["rank_W1_plus_W2"] = rs;
  r.diagnostics["rank_combined"] = rb;
  r.applicable = true;
  r.holds = rs == rb;
  if (!r.holds) r.reason = "ran(W1-W2) not contained in ran(W1+W2)";
  return r;
}

std::vector<ConditionResult> check_unitary_conditions(const CMatrix& wb_hat, const CMatrix& Q,
                                                      const CMatrix& W1, const CMatrix& W2,
                                                      const CMatrix& P0, const Tolerances& tol) {
  std::vector<ConditionResult> out;
  const ReP0Status p0 = re_P0_status(P0, tol);

  ConditionResult t35;
  t35.id = "T3.5";
  {
    const CMatrix G = kernel_form(wb_hat, Q, tol.rank);
    t35.diagnostics["kernel_dim"] = static_cast<double>(G.rows());
    Conjunction c;
    if (G.rows() > 0) {
      const double norm = numlin::operator_norm(G);
      t35.diagnostics["norm_kernel_form"] = norm;
      c.require(norm <= tol.psd * numlin::operator_norm(Q), "kernel form not zero");
    }
    c.require(p0.zero, "Re P0 not zero");
    add_re_P0(t35, p0);
    c.finish(t35);
  }

  if (!is_square_case(W1)) {
    out.push_back(not_applicable("T3.3", "k != Nd"));
    out.push_back(not_applicable("T3.4", "k != Nd"));
    out.push_back(std::move(t35));
    out.push_back(not_applicable("C3.6", "k != Nd"));
    out.push_back(not_applicable("C3.7", "k != Nd"));
    return out;
  }

  const CMatrix sum = W1 + W2;
  const CMatrix rdiff = W2 - W1;
  const bool inj_sum = numlin::is_injective(sum, tol.rank);
  const bool inj_diff = numlin::is_injective(rdiff, tol.rank);
  const CMatrix form = sigma_form(W1, W2);
  const double form_norm = numlin::operator_norm(form);
  const bool form_zero = form_norm <= tol.psd * stacked_scale(W1, W2);
  const bool surj = surjective(wb_hat, tol.rank);
  const std::optional<CMatrix> V = extract_V(W1, W2, tol.rank);
  const double defect = V ? unitarity_defect(*V) : std::numeric_limits<double>::infinity();

  ConditionResult t33;
  t33.id = "T3.3";
  {
    t33.diagnostics["sigma_min_W1_plus_W2"] = numlin::smallest_singular_value(sum);
    t33.diagnostics["sigma_min_W2_minus_W1"] = numlin::smallest_singular_value(rdiff);
    t33.diagnostics["norm_sigma_form"] = form_norm;
    add_re_P0(t33, p0);
    Conjunction c;
    c.require(inj_sum, "W1+W2 not injective");
    c.require(inj_diff, "-W1+W2 not injective");
    c.require(form_zero, "W_B Sigma W_B* not zero");
    c.require(p0.zero, "Re P0 not zero");
    c.finish(t33);
  }

  ConditionResult t34;
  t34.id = "T3.4";
  {
    if (V) t34.diagnostics["unitarity_defect_V"] = defect;
    add_re_P0(t34, p0);
    Conjunction c;
    c.require(inj_sum, "W1+W2 not injective");
    c.require(inj_diff, "-W1+W2 not injective");
    c.require(V.has_value() && defect <= tol.v_slack, "V not unitary");
    c.require(p0.zero, "Re P0 not zero");
    c.finish(t34);
  }

  ConditionResult c36;
  c36.id = "C3.6";
  {
    c36.diagnostics["norm_sigma_form"] = form_norm;
    add_re_P0(c36, p0);
    Conjunction c;
    c.require(surj, "W_B not surjective");
    c.require(form_zero, "W_B Sigma W_B* not zero");
    c.require(p0.zero, "Re P0 not zero");
    c.finish(c36);
  }

  ConditionResult c37;
  c37.id = "C3.7";
  {
    if (V) c37.diagnostics["unitarity_defect_V"] = defect;
    add_re_P0(c37, p0);
    Conjunction c;
    c.require(surj, "W_B not surjective");
    c.require(V.has_value(), "no factorization W_B = (W1+W2)/2 [I+V I-V]");
    c.require(!V || defect <= tol.v_slack, "V not unitary");
    c.require(p0.zero, "Re P0 not zero");
    c.finish(c37);
  }

  out.push_back(std::move(t33));
  out.push_back(std::move(t34));
  out.push_back(std::move(t35));
  out.push_back(std::move(c36));
  out.push_back(std::move(c37));
  return out;
}

Verdict analyze_interval(const PortHamiltonianSystem& sys) {
  if (sys.interval() != IntervalKind::unit_interval) {
    throw Error(ErrorKind::validation, "analyze_interval needs a unit-interval system", "interval");
  }
  const Tolerances& tol = sys.tol();
  const BoundaryOperator op = make_boundary_operator(sys);
  const CMatrix& P0 = sys.P(0);
  Verdict v;

  const Eigen::Index rank = numlin::numerical_rank(op.WB_hat, tol.rank);
  if (rank < op.WB_hat.rows()) {
    v.warnings.push_back("W_B_hat has rank " + std::to_string(rank) + " < " +
                         std::to_string(op.WB_hat.rows()) + " rows; redundant boundary conditions");
  }

  v.conditions.push_back(check_range_condition(op.W1, op.W2, tol));
  v.conditions.push_back(check_injective_psd(op.W1, op.W2, P0, tol));
  if (is_square_case(op.W1) && !op.V) {
    ConditionResult t14;
    t14.id = "T1.4";
    t14.applicable = true;
    t14.holds = false;
    t14.reason = "W1+W2 not injective";
    add_re_P0(t14, re_P0_status(P0, tol));
    v.conditions.push_back(std::move(t14));
  } else if (!is_square_case(op.W1)) {
    v.conditions.push_back(not_applicable("T1.4", "k != Nd"));
  } else {
    v.conditions.push_back(check_V_contraction(op.V, P0, tol));
  }
  v.conditions.push_back(check_kernel_dissipativity(op.WB_hat, op.Q, P0, tol));
  v.conditions.push_back(check_surjective_psd(op.WB_hat, op.W1, op.W2, P0, tol));
  v.conditions.push_back(check_surjective_V(op.WB_hat, op.W1, op.W2, P0, tol));
  for (auto& c : check_unitary_conditions(op.WB_hat, op.Q, op.W1, op.W2, P0, tol)) {
    v.conditions.push_back(std::move(c));
  }

  const bool t15 = v.at("T1.5").holds;
  const bool t35 = v.at("T3.5").holds;
  if (!is_square_case(op.W1)) {
    v.consensus = t15 ? Consensus::dissipative_only : Consensus::not_contraction;
    v.unitary = t35 ? UnitaryConsensus::conservative_only : UnitaryConsensus::not_unitary;
    v.warnings.push_back("W_B_hat has " + std::to_string(op.WB_hat.rows()) + " rows, not Nd = " +
                         std::to_string(op.W1.cols()) + "; only the kernel conditions apply");
    v.discrepancy = t35 && !t15;
    return v;
  }

  bool contraction = false;
  bool unitary = false;
  const bool c_agree = agree(v, kContractionIds, &contraction);
  const bool u_agree = agree(v, kUnitaryIds, &unitary);
  v.consensus = c_agree ? (contraction ? Consensus::contraction : Consensus::not_contraction)
                        : Consensus::undetermined;
  v.unitary = u_agree ? (unitary ? UnitaryConsensus::unitary : UnitaryConsensus::not_unitary)
                      : UnitaryConsensus::undetermined;
  v.discrepancy = !c_agree || !u_agree || (u_agree && c_agree && unitary && !contraction);
  return v;
}

}  // namespace phwell
