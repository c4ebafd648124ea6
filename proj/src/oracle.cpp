#include "phwell/oracle.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss.hpp>

#include "json.hpp"
#include "phwell/error.hpp"
#include "phwell/numlin.hpp"
#include "phwell/random.hpp"

namespace phwell {

QuadratureNodes composite_gauss(const std::vector<double>& breakpoints, int subpanels) {
  using rule = boost::math::quadrature::gauss<double, 20>;
  const auto& abscissa = rule::abscissa();
  const auto& weight = rule::weights();
  QuadratureNodes q;
  for (std::size_t p = 0; p + 1 < breakpoints.size(); ++p) {
    const double a0 = breakpoints[p];
    const double width = (breakpoints[p + 1] - a0) / subpanels;
    for (int s = 0; s < subpanels; ++s) {
      const double mid = a0 + (s + 0.5) * width;
      const double half = 0.5 * width;
      for (std::size_t i = 0; i < abscissa.size(); ++i) {
        q.nodes.push_back(mid + half * abscissa[i]);
        q.weights.push_back(half * weight[i]);
        if (abscissa[i] != 0.0) {
          q.nodes.push_back(mid - half * abscissa[i]);
          q.weights.push_back(half * weight[i]);
        }
      }
    }
  }
  return q;
}

namespace {

struct RayleighParts {
  Complex derivative_terms = 0.0;  // int x* sum_{k>=1} P_k x^(k)
  Complex p0_term = 0.0;           // int x* P0 x
};

void require_order(const SmoothFunction& x, int N) {
  if (x.derivative_order() < N) {
    throw Error(ErrorKind::order, "function carries " + std::to_string(x.derivative_order()) +
                                      " derivatives, the operator needs " + std::to_string(N));
  }
}

RayleighParts rayleigh_parts(const PortHamiltonianSystem& sys, const SmoothFunction& x, int subpanels) {
  require_order(x, sys.N());
  const QuadratureNodes q = composite_gauss(x.breakpoints(), subpanels);
  RayleighParts r;
  for (std::size_t i = 0; i < q.nodes.size(); ++i) {
    const auto der = x.derivatives(q.nodes[i], sys.N());
    CVector ax = CVector::Zero(sys.d());
    for (int k = 1; k <= sys.N(); ++k) ax += sys.P(k) * der[static_cast<std::size_t>(k)];
    r.derivative_terms += q.weights[i] * der[0].dot(ax);
    r.p0_term += q.weights[i] * der[0].dot(sys.P(0) * der[0]);
  }
  return r;
}

// Hermitian part of the sesquilinear form int f_i* (sum_{k>=kmin} P_k f_j^(k)).
CMatrix assembled_form(const PortHamiltonianSystem& sys, const std::vector<SmoothFunction>& basis,
                       int kmin, int subpanels) {
  const std::size_t r = basis.size();
  CMatrix M = CMatrix::Zero(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r));
  if (r == 0) return M;
  const QuadratureNodes q = composite_gauss(basis.front().breakpoints(), subpanels);
  std::vector<CVector> value(r), image(r);
  for (std::size_t n = 0; n < q.nodes.size(); ++n) {
    for (std::size_t j = 0; j < r; ++j) {
      const auto der = basis[j].derivatives(q.nodes[n], sys.N());
      value[j] = der[0];
      image[j] = CVector::Zero(sys.d());
      for (int k = kmin; k <= sys.N(); ++k) image[j] += sys.P(k) * der[static_cast<std::size_t>(k)];
    }
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < r; ++j) {
        M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) += q.weights[n] * value[i].dot(image[j]);
      }
    }
  }
  return numlin::hermitian_part(M);
}

double max_eigen(const CMatrix& h, CVector* vec) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  const Eigen::Index last = h.rows() - 1;
  if (vec != nullptr) *vec = es.eigenvectors().col(last);
  return es.eigenvalues()(last);
}

void offer_witness(OracleReport& rep, double value, double threshold, CVector trace, const char* source) {
  if (value <= threshold) return;
  if (!rep.witness || value > rep.witness->value) rep.witness = OracleWitness{std::move(trace), value, source};
}

}  // namespace

double quadrature_rayleigh(const PortHamiltonianSystem& sys, const SmoothFunction& x, int subpanels) {
  const RayleighParts p = rayleigh_parts(sys, x, subpanels);
  return (p.derivative_terms + p.p0_term).real();
}

double boundary_form_value(const PortHamiltonianSystem& sys, const SmoothFunction& x, int subpanels) {
  const BoundaryTrace t = boundary_trace(x, sys.N(), sys.d());
  const CMatrix Q = build_Q(sys.P());
  const double boundary = 0.5 * (t.phi1.dot(Q * t.phi1) - t.phi0.dot(Q * t.phi0)).real();
  return boundary + rayleigh_parts(sys, x, subpanels).p0_term.real();
}

OracleReport dissipativity_oracle(const PortHamiltonianSystem& sys, int n_samples, std::uint64_t seed,
                                  double tol) {
  const int N = sys.N();
  const int d = sys.d();
  const Eigen::Index nd = static_cast<Eigen::Index>(N) * d;
  const CMatrix Q = build_Q(sys.P());
  double pscale = 1.0;
  for (const auto& p : sys.P()) pscale = std::max(pscale, numlin::operator_norm(p));

  OracleReport rep;
  rep.tolerance = tol;
  const double threshold = tol * std::max(1.0, numlin::operator_norm(Q));
  // Half-line kernel vectors prescribe x(0) only; the interpolant then vanishes
  // near 1, so integrating over [0,1] covers its whole support.
  const bool half_line = sys.interval() == IntervalKind::half_line;
  CMatrix K = numlin::kernel_basis(sys.WB_hat(), sys.tol().rank);
  if (half_line) {
    CMatrix padded = CMatrix::Zero(2 * nd, K.cols());
    padded.bottomRows(nd) = K;
    K = padded;
  }
  rep.kernel_dim = static_cast<int>(K.cols());
  rep.max_boundary_value = -std::numeric_limits<double>::infinity();
  rep.max_full_value = -std::numeric_limits<double>::infinity();

  if (K.cols() > 0) {
    Rng rng(seed);
    const bool real = sys.field() == Field::real;
    for (int s = 0; s < n_samples; ++s) {
      const CVector c = rng.unit_vector(K.cols(), real);
      const CVector z = K * c;
      const SmoothFunction x = boundary_interpolant(z.head(nd), z.tail(nd), N, d);
      const RayleighParts parts = rayleigh_parts(sys, x, 8);
      const double boundary = parts.derivative_terms.real();
      const double full = boundary + parts.p0_term.real();
      const double formula = boundary_form_value(sys, x, 8);
      rep.max_boundary_value = std::max(rep.max_boundary_value, boundary);
      rep.max_full_value = std::max(rep.max_full_value, full);
      rep.max_mismatch = std::max(rep.max_mismatch, std::abs(full - formula));
      offer_witness(rep, boundary, threshold, z, "kernel_sample");
      ++rep.samples_drawn;
    }

    std::vector<SmoothFunction> basis;
    for (Eigen::Index j = 0; j < K.cols(); ++j) {
      basis.push_back(boundary_interpolant(K.col(j).head(nd), K.col(j).tail(nd), N, d));
    }
    CVector top;
    rep.assembled_max_eig = max_eigen(assembled_form(sys, basis, 1, 8), &top);
    offer_witness(rep, rep.assembled_max_eig, threshold, K * top, "kernel_form");
  } else {
    rep.max_boundary_value = 0.0;
    rep.max_full_value = 0.0;
  }

  // Re P0 through functions with vanishing traces: the derivative terms
  // integrate to zero in the real part, leaving ||psi||^2 Re z*P0 z.
  std::vector<SmoothFunction> bumps;
  for (int i = 0; i < d; ++i) bumps.push_back(interior_bump(CVector::Unit(d, i), N));
  const CMatrix B = assembled_form(sys, bumps, 0, 8);
  double psi_norm2 = 0.0;
  {
    const QuadratureNodes q = composite_gauss(bumps.front().breakpoints(), 8);
    for (std::size_t i = 0; i < q.nodes.size(); ++i) {
      const double psi = cutoff_derivatives(Cutoff::interior, bumps.front().eps(), q.nodes[i], 0)[0];
      psi_norm2 += q.weights[i] * psi * psi;
    }
  }
  CVector dir;
  rep.bump_max_value = max_eigen(B, &dir) / psi_norm2;
  offer_witness(rep, rep.bump_max_value, tol * pscale, dir, "interior_bump");

  rep.consistent = rep.max_mismatch <= 1e-8;
  rep.holds = rep.max_boundary_value <= threshold && rep.assembled_max_eig <= threshold &&
              rep.bump_max_value <= tol * pscale;
  return rep;
}

std::string OracleReport::to_json(int indent) const {
  nlohmann::json j = {{"holds", holds},
                      {"samples_drawn", samples_drawn},
                      {"kernel_dim", kernel_dim},
                      {"max_boundary_value", max_boundary_value},
                      {"max_full_value", max_full_value},
                      {"assembled_max_eig", assembled_max_eig},
                      {"bump_max_value", bump_max_value},
                      {"max_mismatch", max_mismatch},
                      {"consistent", consistent},
                      {"tolerance", tolerance}};
  if (witness) {
    nlohmann::json trace = nlohmann::json::array();
    for (Eigen::Index i = 0; i < witness->trace.size(); ++i) {
      trace.push_back({witness->trace(i).real(), witness->trace(i).imag()});
    }
    j["witness"] = {{"value", witness->value}, {"source", witness->source}, {"trace", trace}};
  } else {
    j["witness"] = nullptr;
  }
  return j.dump(indent);
}

}  // namespace phwell
