#include "phwell/random_system.hpp"

#include <algorithm>
#include <cmath>

#include "phwell/error.hpp"
#include "phwell/halfline_checker.hpp"
#include "phwell/interval_checker.hpp"
#include "phwell/numlin.hpp"
#include "phwell/random.hpp"

namespace phwell {

std::string_view to_string(SystemClass c) {
  switch (c) {
    case SystemClass::interval_square: return "interval_square";
    case SystemClass::interval_rect: return "interval_rect";
    case SystemClass::halfline: return "halfline";
  }
  return "interval_square";
}

SystemClass parse_system_class(std::string_view text) {
  if (text == "interval_square") return SystemClass::interval_square;
  if (text == "interval_rect") return SystemClass::interval_rect;
  if (text == "halfline") return SystemClass::halfline;
  throw Error(ErrorKind::parse, "unknown class '" + std::string(text) + "'", "class");
}

namespace {

constexpr double kMargin = 1e-6;
constexpr int kMaxAttempts = 10000;

double condition_number(const CMatrix& m) {
  const RVector s = numlin::singular_values(m);
  return s(s.size() - 1) > 0.0 ? s(0) / s(s.size() - 1) : std::numeric_limits<double>::infinity();
}

CMatrix well_conditioned(Rng& rng, Eigen::Index n, bool real) {
  for (;;) {
    CMatrix c = rng.gaussian(n, n, real);
    if (n == 0 || condition_number(c) <= 1e3) return c;
  }
}

CMatrix dissipative_P0(Rng& rng, int d, bool real) {
  const CMatrix g = rng.gaussian(d, d, real);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(numlin::hermitian_part(g), Eigen::EigenvaluesOnly);
  const double shift = es.eigenvalues().maxCoeff() + rng.uniform(0.05, 0.5);
  return g - shift * CMatrix::Identity(d, d);
}

CMatrix skew_P0(Rng& rng, int d, bool real) {
  const CMatrix g = rng.gaussian(d, d, real);
  return 0.5 * (g - g.adjoint());
}

std::vector<CMatrix> draw_P(Rng& rng, int N, int d, bool real) {
  std::vector<CMatrix> P(static_cast<std::size_t>(N) + 1, CMatrix::Zero(d, d));
  for (int k = 1; k <= N; ++k) {
    for (;;) {
      const CMatrix g = rng.gaussian(d, d, real);
      P[static_cast<std::size_t>(k)] = (k % 2 == 1) ? CMatrix(0.5 * (g + g.adjoint())) : CMatrix(0.5 * (g - g.adjoint()));
      if (k < N) break;
      const double smax = numlin::operator_norm(P[static_cast<std::size_t>(k)]);
      if (numlin::smallest_singular_value(P[static_cast<std::size_t>(k)]) >= 1e-2 * smax) break;
    }
  }
  return P;
}

// V = U1 diag(sigma) U2* with largest singular value `top`.
CMatrix matrix_with_norm(Rng& rng, Eigen::Index n, double top, bool real) {
  RVector s(n);
  for (Eigen::Index i = 0; i < n; ++i) s(i) = rng.uniform(0.0, top);
  s(0) = top;
  return rng.unitary(n, real) * s.cast<Complex>().asDiagonal() * rng.unitary(n, real).adjoint();
}

CMatrix transform(const CMatrix& Q) {
  const Eigen::Index n = Q.rows();
  CMatrix T(2 * n, 2 * n);
  T << Q, -Q, CMatrix::Identity(n, n), CMatrix::Identity(n, n);
  return T;
}

// W_B_hat = 1/2 C [I+V, I-V] [Q -Q; I I]
CMatrix boundary_from_V(Rng& rng, const CMatrix& Q, const CMatrix& V, bool real) {
  const Eigen::Index n = Q.rows();
  const CMatrix I = CMatrix::Identity(n, n);
  CMatrix right(n, 2 * n);
  right << I + V, I - V;
  return 0.5 * well_conditioned(rng, n, real) * right * transform(Q);
}

SystemDescription base(int N, int d, bool real, IntervalKind kind) {
  SystemDescription raw;
  raw.field = real ? Field::real : Field::complex;
  raw.interval = kind;
  raw.order_N = N;
  raw.dim_d = d;
  raw.H = HamiltonianDensity::constant(CMatrix::Identity(d, d));
  return raw;
}

bool away_from(double value, double threshold, double scale) {
  return std::abs(value - threshold) >= kMargin * std::max(scale, 1.0);
}

// Families: 0 dense Gaussian, 1 ||V|| < 1, 2 ||V|| > 1, 3 unitary V.
CMatrix square_boundary(Rng& rng, const CMatrix& Q, bool real, int family) {
  const Eigen::Index n = Q.rows();
  switch (family) {
    case 0: return rng.gaussian(n, 2 * n, real);
    case 1: return boundary_from_V(rng, Q, matrix_with_norm(rng, n, rng.uniform(0.1, 0.95), real), real);
    case 2: return boundary_from_V(rng, Q, matrix_with_norm(rng, n, rng.uniform(1.05, 2.0), real), real);
    default: return boundary_from_V(rng, Q, rng.unitary(n, real), real);
  }
}

bool interval_margins_ok(const PortHamiltonianSystem& sys, bool on_unitary_boundary) {
  const BoundaryOperator op = make_boundary_operator(sys);
  const double qn = numlin::operator_norm(op.Q);
  if (op.W1.rows() == op.W1.cols()) {
    const CMatrix sum = op.W1 + op.W2;
    if (numlin::smallest_singular_value(sum) < kMargin * numlin::operator_norm(sum)) return false;
    if (!op.V) return false;
    if (!on_unitary_boundary) {
      const RVector s = numlin::singular_values(*op.V);
      for (Eigen::Index i = 0; i < s.size(); ++i) {
        if (!away_from(s(i), 1.0, 1.0)) return false;
      }
    }
  }
  if (!on_unitary_boundary) {
    const CMatrix G = kernel_form(op.WB_hat, op.Q, sys.tol().rank);
    if (G.rows() > 0) {
      Eigen::SelfAdjointEigenSolver<CMatrix> es(numlin::hermitian_part(G), Eigen::EigenvaluesOnly);
      if (!away_from(es.eigenvalues().maxCoeff(), 0.0, qn)) return false;
    }
  }
  return true;
}

PortHamiltonianSystem random_interval(Rng& rng, int N, int d, bool rect) {
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    const bool real = (N % 2 == 0 && d % 2 == 1) ? false : rng.uniform() < 0.5;
    SystemDescription raw = base(N, d, real, IntervalKind::unit_interval);
    raw.P = draw_P(rng, N, d, real);
    const CMatrix Q = build_Q(raw.P);
    const int family = rect ? rng.integer(0, 2) : rng.integer(0, 3);
    const bool unitary = family == 3;
    raw.P[0] = unitary ? skew_P0(rng, d, real) : dissipative_P0(rng, d, real);
    raw.WB_hat = square_boundary(rng, Q, real, family);
    if (rect) {
      const Eigen::Index n = Q.rows();
      if (n >= 2 && rng.uniform() < 0.5) {
        const Eigen::Index keep = rng.integer(1, static_cast<int>(n) - 1);
        raw.WB_hat = CMatrix(raw.WB_hat.topRows(keep));
      } else {
        const Eigen::Index extra = rng.integer(1, static_cast<int>(n));
        CMatrix grown(n + extra, 2 * n);
        grown << raw.WB_hat, rng.gaussian(extra, 2 * n, real);
        raw.WB_hat = grown;
      }
    }
    const PortHamiltonianSystem sys = validate_system(raw);
    if (interval_margins_ok(sys, unitary)) return sys;
  }
  throw Error(ErrorKind::validation, "random draw did not meet the margin filter");
}

PortHamiltonianSystem random_halfline(Rng& rng, int d) {
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    const bool real = rng.uniform() < 0.5;
    SystemDescription raw = base(1, d, real, IntervalKind::half_line);
    RVector mu(d);
    for (int i = 0; i < d; ++i) mu(i) = (rng.uniform() < 0.5 ? -1.0 : 1.0) * rng.uniform(0.5, 2.0);
    const CMatrix W = rng.unitary(d, real);
    const CMatrix P1 = W * mu.cast<Complex>().asDiagonal() * W.adjoint();
    raw.P = {CMatrix::Zero(d, d), numlin::hermitian_part(P1)};
    const HalfLineDecomposition dec = decompose_P1(raw.P[1]);
    const Eigen::Index n1 = dec.n1, n2 = dec.n2;

    int family = rng.integer(0, 2);
    if (family == 2 && (n1 != n2 || n1 == 0)) family = 1;
    const bool unitary = family == 2;
    raw.P[0] = unitary ? skew_P0(rng, d, real) : dissipative_P0(rng, d, real);

    if (family == 0 || n1 == 0 || n2 == 0) {
      raw.WB_hat = rng.gaussian(n2, d, real);
    } else {
      const CMatrix theta = dec.Theta.cast<Complex>().asDiagonal();
      CMatrix U;
      if (unitary) {
        // Lambda + U* Theta U = 0 with U = |Theta|^{-1/2} W Lambda^{1/2}.
        const CMatrix a = dec.Theta.cwiseAbs().cwiseSqrt().cwiseInverse().cast<Complex>().asDiagonal();
        const CMatrix b = dec.Lambda.cwiseSqrt().cast<Complex>().asDiagonal();
        U = a * rng.unitary(n1, real) * b;
      } else {
        // Scale a random direction relative to the critical factor c* where
        // Lambda + c*^2 U0* Theta U0 becomes singular.
        const CMatrix U0 = rng.gaussian(n2, n1, real);
        const CMatrix li = dec.Lambda.cwiseSqrt().cwiseInverse().cast<Complex>().asDiagonal();
        const CMatrix M = -(li * U0.adjoint() * theta * U0 * li);
        Eigen::SelfAdjointEigenSolver<CMatrix> es(numlin::hermitian_part(M), Eigen::EigenvaluesOnly);
        const double top = es.eigenvalues().maxCoeff();
        const double cstar = 1.0 / std::sqrt(std::max(top, 1e-300));
        double r = rng.uniform(0.3, 1.7);
        if (std::abs(r - 1.0) < 0.05) r += r < 1.0 ? -0.05 : 0.05;
        U = cstar * r * U0;
      }
      CMatrix UI(n2, d);
      UI << U, CMatrix::Identity(n2, n2);
      raw.WB_hat = well_conditioned(rng, n2, real) * UI * dec.S;
    }
    const PortHamiltonianSystem sys = validate_system(raw);

    // Margin filter on the factorization and the decisive eigenvalue.
    const FactorizationOutcome f = factorize_boundary(sys.WB_hat(), dec, sys.tol().rank);
    if (!f.ok()) continue;
    if (n2 > 0 && numlin::smallest_singular_value(f.factorization->U2) <
                      kMargin * numlin::operator_norm(f.factorization->U2)) {
      continue;
    }
    if (!unitary && n1 > 0) {
      const CMatrix& U = f.factorization->U;
      const CMatrix M = CMatrix(dec.Lambda.cast<Complex>().asDiagonal()) +
                        U.adjoint() * dec.Theta.cast<Complex>().asDiagonal() * U;
      Eigen::SelfAdjointEigenSolver<CMatrix> es(numlin::hermitian_part(M), Eigen::EigenvaluesOnly);
      if (!away_from(es.eigenvalues().minCoeff(), 0.0, numlin::operator_norm(raw.P[1]))) continue;
    }
    return sys;
  }
  throw Error(ErrorKind::validation, "random draw did not meet the margin filter");
}

}  // namespace

PortHamiltonianSystem random_system(std::uint64_t seed, int N, int d, SystemClass cls) {
  if (N < 1 || d < 1) throw Error(ErrorKind::validation, "N and d must be positive");
  Rng rng(seed);
  switch (cls) {
    case SystemClass::interval_square: return random_interval(rng, N, d, false);
    case SystemClass::interval_rect: return random_interval(rng, N, d, true);
    case SystemClass::halfline: return random_halfline(rng, d);
  }
  return random_interval(rng, N, d, false);
}

}  // namespace phwell
