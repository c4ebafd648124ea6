#include "phwell/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "phwell/error.hpp"
#include "phwell/numlin.hpp"

namespace phwell {

namespace {

std::string matrix_text(const CMatrix& m) {
  std::ostringstream os;
  os << "[";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    os << (i ? "; " : "");
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      os << (j ? " " : "") << m(i, j).real();
      if (m(i, j).imag() != 0.0) os << (m(i, j).imag() > 0 ? "+" : "") << m(i, j).imag() << "i";
    }
  }
  os << "]";
  return os.str();
}

// State layout: component c occupies planes [2c*n, 2c*n + n) (real) and
// [(2c+1)*n, (2c+2)*n) (imaginary).
class Planes {
 public:
  Planes(int d, std::size_t n) : d_(d), n_(n), data_(2 * static_cast<std::size_t>(d) * n, 0.0) {}
  double* re(int c) { return data_.data() + 2 * static_cast<std::size_t>(c) * n_; }
  double* im(int c) { return re(c) + n_; }
  const double* re(int c) const { return data_.data() + 2 * static_cast<std::size_t>(c) * n_; }
  const double* im(int c) const { return re(c) + n_; }
  std::vector<double>& raw() { return data_; }
  const std::vector<double>& raw() const { return data_; }
  void zero() { std::fill(data_.begin(), data_.end(), 0.0); }
  std::size_t n() const { return n_; }
  Complex at(int c, std::size_t i) const { return {re(c)[i], im(c)[i]}; }
  void set(int c, std::size_t i, Complex v) {
    re(c)[i] = v.real();
    im(c)[i] = v.imag();
  }

 private:
  int d_;
  std::size_t n_;
  std::vector<double> data_;
};

class Discretization {
 public:
  Discretization(const PortHamiltonianSystem& sys, const SimulationOptions& opt)
      : k_(opt.kernels != nullptr ? *opt.kernels : simd::active_kernels()),
        d_(sys.d()),
        nx_(static_cast<std::size_t>(opt.nx)),
        half_line_(sys.interval() == IntervalKind::half_line),
        length_(half_line_ ? opt.half_line_length : 1.0),
        h_(length_ / opt.nx),
        P0_(sys.P(0)),
        P1_(sys.P(1)),
        w_(d_, nx_),
        v_(d_, nx_),
        vhat_(d_, nx_ + 1),
        what_(d_, nx_ + 1),
        div_(d_, nx_) {
    const numlin::EigenDecomposition eig = numlin::hermitian_eigendecomposition(P1_);
    S_ = eig.S;
    lambda_ = eig.values;
    for (int c = 0; c < d_; ++c) {
      const double s = lambda_(c) > 0 ? 1.0 : (lambda_(c) < 0 ? -1.0 : 0.0);
      const double blend = opt.theta * s;
      alpha_.push_back(0.5 * (1.0 - blend));
      beta_.push_back(0.5 * (1.0 + blend));
    }
    build_H(sys);
    build_closure(sys);
  }

  double h() const { return h_; }
  double length() const { return length_; }
  double h_sup() const { return h_sup_; }
  double lambda_max() const { return lambda_.cwiseAbs().maxCoeff(); }

  // w = H x
  void apply_H(const Planes& x, Planes& w) const {
    w.zero();
    for (int a = 0; a < d_; ++a) {
      for (int b = 0; b < d_; ++b) {
        if (uniform_H_) {
          const Complex hab = H0_(a, b);
          if (hab == 0.0) continue;
          k_.caxpy(nx_, hab.real(), hab.imag(), x.re(b), x.im(b), w.re(a), w.im(a));
        } else {
          const std::size_t idx = static_cast<std::size_t>(a * d_ + b);
          k_.cmul_acc(nx_, Hre_[idx].data(), Him_[idx].data(), x.re(b), x.im(b), w.re(a), w.im(a));
        }
      }
    }
  }

  // out = M in, column planes of length n
  void apply_matrix(const CMatrix& M, const Planes& in, Planes& out, std::size_t n) const {
    out.zero();
    for (int a = 0; a < d_; ++a) {
      for (int b = 0; b < d_; ++b) {
        const Complex m = M(a, b);
        if (m == 0.0) continue;
        k_.caxpy(n, m.real(), m.imag(), in.re(b), in.im(b), out.re(a), out.im(a));
      }
    }
  }

  // Boundary states [w(right); w(left)] for the current characteristic field.
  CVector boundary_states(const Planes& v) const {
    CVector g(d_);
    for (int c = 0; c < d_; ++c) {
      g(c) = lambda_(c) > 0 ? v.at(c, 0) : v.at(c, nx_ - 1);
    }
    return closure_ * g;
  }

  // dx/dt into `out`; also returns the boundary states used.
  CVector rhs(const Planes& x, Planes& out) {
    apply_H(x, w_);
    apply_matrix(S_, w_, v_, nx_);
    for (int c = 0; c < d_; ++c) {
      if (nx_ > 1) {
        k_.two_point(nx_ - 1, alpha_[c], beta_[c], v_.re(c), vhat_.re(c) + 1);
        k_.two_point(nx_ - 1, alpha_[c], beta_[c], v_.im(c), vhat_.im(c) + 1);
      }
    }
    const CVector b = boundary_states(v_);
    const CVector vr = S_ * b.head(d_);
    const CVector vl = S_ * b.tail(d_);
    for (int c = 0; c < d_; ++c) {
      vhat_.set(c, 0, vl(c));
      vhat_.set(c, nx_, vr(c));
    }
    apply_matrix(S_.adjoint(), vhat_, what_, nx_ + 1);
    for (int c = 0; c < d_; ++c) {
      k_.difference(nx_, 1.0 / h_, what_.re(c), div_.re(c));
      k_.difference(nx_, 1.0 / h_, what_.im(c), div_.im(c));
    }
    out.zero();
    for (int a = 0; a < d_; ++a) {
      for (int b2 = 0; b2 < d_; ++b2) {
        const Complex p1 = P1_(a, b2);
        if (p1 != 0.0) k_.caxpy(nx_, p1.real(), p1.imag(), div_.re(b2), div_.im(b2), out.re(a), out.im(a));
        const Complex p0 = P0_(a, b2);
        if (p0 != 0.0) k_.caxpy(nx_, p0.real(), p0.imag(), w_.re(b2), w_.im(b2), out.re(a), out.im(a));
      }
    }
    return b;
  }

  struct Measures {
    double energy;
    double boundary_power;
    double interior_power;
  };

  Measures measure(const Planes& x) {
    apply_H(x, w_);
    apply_matrix(S_, w_, v_, nx_);
    const CVector b = boundary_states(v_);
    Measures m{};
    for (int c = 0; c < d_; ++c) {
      m.energy += k_.dot(nx_, x.re(c), w_.re(c)) + k_.dot(nx_, x.im(c), w_.im(c));
    }
    m.energy *= h_;
    const CVector right = b.head(d_);
    const CVector left = b.tail(d_);
    m.boundary_power = (right.dot(P1_ * right) - left.dot(P1_ * left)).real();
    // P0 w into the div_ planes as scratch.
    apply_matrix(P0_, w_, div_, nx_);
    double ip = 0.0;
    for (int c = 0; c < d_; ++c) ip += k_.dot(nx_, w_.re(c), div_.re(c)) + k_.dot(nx_, w_.im(c), div_.im(c));
    m.interior_power = 2.0 * h_ * ip;
    return m;
  }

  const simd::KernelTable& kernels() const { return k_; }

 private:
  void build_H(const PortHamiltonianSystem& sys) {
    const HamiltonianDensity& H = sys.H();
    uniform_H_ = H.kind() == HamiltonianDensity::Kind::constant;
    H0_ = H.at(0.0);
    h_sup_ = 0.0;
    if (uniform_H_) {
      h_sup_ = numlin::operator_norm(H0_);
      return;
    }
    Hre_.assign(static_cast<std::size_t>(d_ * d_), std::vector<double>(nx_));
    Him_.assign(static_cast<std::size_t>(d_ * d_), std::vector<double>(nx_));
    for (std::size_t i = 0; i < nx_; ++i) {
      const CMatrix Hi = H.at((static_cast<double>(i) + 0.5) * h_);
      h_sup_ = std::max(h_sup_, numlin::operator_norm(Hi));
      for (int a = 0; a < d_; ++a) {
        for (int b = 0; b < d_; ++b) {
          Hre_[static_cast<std::size_t>(a * d_ + b)][i] = Hi(a, b).real();
          Him_[static_cast<std::size_t>(a * d_ + b)][i] = Hi(a, b).imag();
        }
      }
    }
  }

  void build_closure(const PortHamiltonianSystem& sys) {
    const CMatrix& wb = sys.WB_hat();
    const Eigen::Index k = wb.rows();
    closure_ = CMatrix::Zero(2 * d_, d_);
    if (!half_line_) {
      // Unknowns [w(1); w(0)]: rows are W_B_hat, then outgoing extrapolation
      // at zeta = 0 (lambda > 0) and at zeta = 1 (lambda < 0).
      CMatrix C = CMatrix::Zero(k + d_, 2 * d_);
      C.topRows(k) = wb;
      CMatrix G = CMatrix::Zero(k + d_, d_);
      for (int c = 0; c < d_; ++c) {
        if (lambda_(c) > 0) {
          C.block(k + c, d_, 1, d_) = S_.row(c);
        } else {
          C.block(k + c, 0, 1, d_) = S_.row(c);
        }
        G(k + c, c) = 1.0;
      }
      require_invertible(C);
      closure_ = C.fullPivLu().solve(G);
    } else {
      // Left end: W_B_hat w(0) = 0 plus lambda > 0 extrapolation. Right end
      // (truncation): incoming characteristics zero, outgoing extrapolated.
      Eigen::Index npos = (lambda_.array() > 0).count();
      CMatrix C = CMatrix::Zero(k + npos, d_);
      C.topRows(k) = wb;
      CMatrix G = CMatrix::Zero(k + npos, d_);
      Eigen::Index r = k;
      for (int c = 0; c < d_; ++c) {
        if (lambda_(c) > 0) {
          C.row(r) = S_.row(c);
          G(r, c) = 1.0;
          ++r;
        }
      }
      require_invertible(C);
      closure_.bottomRows(d_) = C.fullPivLu().solve(G);
      CMatrix right = CMatrix::Zero(d_, d_);
      for (int c = 0; c < d_; ++c) {
        if (lambda_(c) < 0) right(c, c) = 1.0;
      }
      closure_.topRows(d_) = S_.adjoint() * right;
    }
  }

  static void require_invertible(const CMatrix& C) {
    if (C.rows() != C.cols()) {
      throw Error(ErrorKind::boundary_closure_singular,
                  "boundary closure has " + std::to_string(C.rows()) + " equations for " +
                      std::to_string(C.cols()) + " unknowns: " + matrix_text(C));
    }
    const double smax = numlin::operator_norm(C);
    if (smax == 0.0 || numlin::smallest_singular_value(C) < 1e-10 * smax) {
      throw Error(ErrorKind::boundary_closure_singular, "boundary closure matrix is singular: " + matrix_text(C));
    }
  }

  const simd::KernelTable& k_;
  int d_;
  std::size_t nx_;
  bool half_line_;
  double length_;
  double h_;
  CMatrix P0_, P1_, S_, H0_;
  RVector lambda_;
  std::vector<double> alpha_, beta_;
  bool uniform_H_ = true;
  double h_sup_ = 1.0;
  std::vector<std::vector<double>> Hre_, Him_;
  CMatrix closure_;  // [w(right); w(left)] = closure_ * g
  Planes w_, v_, vhat_, what_, div_;
};

Planes to_planes(const std::vector<CVector>& x, int d) {
  Planes p(d, x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (int c = 0; c < d; ++c) p.set(c, i, x[i](c));
  }
  return p;
}

std::vector<CVector> from_planes(const Planes& p, int d) {
  std::vector<CVector> x(p.n(), CVector(d));
  for (std::size_t i = 0; i < p.n(); ++i) {
    for (int c = 0; c < d; ++c) x[i](c) = p.at(c, i);
  }
  return x;
}

}  // namespace

EnergyTrace simulate(const PortHamiltonianSystem& sys, const std::vector<CVector>& x0,
                     const SimulationOptions& opt) {
  if (sys.N() != 1) throw Error(ErrorKind::validation, "the simulator handles N = 1 only", "N");
  if (!(opt.cfl > 0.0 && opt.cfl <= 0.9)) {
    throw Error(ErrorKind::cfl_violation, "cfl must lie in (0, 0.9], got " + std::to_string(opt.cfl), "cfl");
  }
  if (opt.nx < 16) throw Error(ErrorKind::validation, "at least 16 cells are required", "nx");
  if (static_cast<int>(x0.size()) != opt.nx) throw Error(ErrorKind::shape, "initial state needs nx cells", "x0");
  if (!(opt.t_final > 0.0)) throw Error(ErrorKind::validation, "t_final must be positive", "tfinal");
  if (!(opt.theta >= 0.0 && opt.theta <= 1.0)) throw Error(ErrorKind::validation, "theta must lie in [0,1]", "theta");

  Discretization disc(sys, opt);
  const int d = sys.d();
  EnergyTrace trace;
  trace.h = disc.h();
  if (sys.interval() == IntervalKind::half_line) {
    trace.warnings.push_back("half line truncated at L = " + std::to_string(disc.length()) +
                             "; the outflow closure adds artificial dissipation");
  }

  const double dt_max = opt.cfl * disc.h() / (disc.lambda_max() * disc.h_sup());
  const long steps = static_cast<long>(std::ceil(opt.t_final / dt_max - 1e-12));
  const double dt = opt.t_final / static_cast<double>(steps);
  trace.dt = dt;

  Planes x = to_planes(x0, d);
  Planes k1(d, x.n()), k2(d, x.n()), k3(d, x.n()), k4(d, x.n()), tmp(d, x.n());
  const auto& K = disc.kernels();
  const std::size_t total = x.raw().size();

  std::vector<double> snaps = opt.snapshot_times;
  std::sort(snaps.begin(), snaps.end());
  std::size_t next_snap = 0;
  auto record = [&](double t) {
    const auto m = disc.measure(x);
    trace.times.push_back(t);
    trace.energy.push_back(m.energy);
    trace.boundary_power.push_back(m.boundary_power);
    trace.interior_power.push_back(m.interior_power);
    while (next_snap < snaps.size() && snaps[next_snap] <= t + 0.5 * dt) {
      trace.snapshots.push_back(Snapshot{t, from_planes(x, d)});
      ++next_snap;
    }
  };

  record(0.0);
  for (long s = 0; s < steps; ++s) {
    disc.rhs(x, k1);
    K.add_scaled(total, x.raw().data(), 0.5 * dt, k1.raw().data(), tmp.raw().data());
    disc.rhs(tmp, k2);
    K.add_scaled(total, x.raw().data(), 0.5 * dt, k2.raw().data(), tmp.raw().data());
    disc.rhs(tmp, k3);
    K.add_scaled(total, x.raw().data(), dt, k3.raw().data(), tmp.raw().data());
    disc.rhs(tmp, k4);
    K.axpy(total, dt / 6.0, k1.raw().data(), x.raw().data());
    K.axpy(total, dt / 3.0, k2.raw().data(), x.raw().data());
    K.axpy(total, dt / 3.0, k3.raw().data(), x.raw().data());
    K.axpy(total, dt / 6.0, k4.raw().data(), x.raw().data());
    record(static_cast<double>(s + 1) * dt);
  }

  const double floor = 1e-13 * std::max(trace.energy.front(), 1e-300);
  double worst = 0.0;
  for (std::size_t j = 0; j + 1 < trace.energy.size(); ++j) {
    worst = std::max(worst, trace.energy[j + 1] - trace.energy[j]);
  }
  trace.max_violation = worst > floor ? worst : 0.0;
  trace.final_state = from_planes(x, d);
  return trace;
}

std::string EnergyTrace::to_csv() const {
  std::ostringstream os;
  os << "t,energy,boundary_power,interior_power\n";
  char line[128];
  for (std::size_t i = 0; i < times.size(); ++i) {
    std::snprintf(line, sizeof line, "%.9g,%.17g,%.17g,%.17g\n", times[i], energy[i], boundary_power[i],
                  interior_power[i]);
    os << line;
  }
  return os.str();
}

std::string snapshot_csv(const Snapshot& s, double h) {
  std::ostringstream os;
  os << "zeta";
  const Eigen::Index d = s.x.empty() ? 0 : s.x.front().size();
  for (Eigen::Index c = 0; c < d; ++c) os << ",re" << c << ",im" << c;
  os << "\n";
  char buf[64];
  for (std::size_t i = 0; i < s.x.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.9g", (static_cast<double>(i) + 0.5) * h);
    os << buf;
    for (Eigen::Index c = 0; c < d; ++c) {
      std::snprintf(buf, sizeof buf, ",%.17g,%.17g", s.x[i](c).real(), s.x[i](c).imag());
      os << buf;
    }
    os << "\n";
  }
  return os.str();
}

std::vector<CVector> sample_cells(const std::function<CVector(double)>& f, int nx, double length) {
  std::vector<CVector> out;
  out.reserve(static_cast<std::size_t>(nx));
  const double h = length / nx;
  for (int i = 0; i < nx; ++i) out.push_back(f((i + 0.5) * h));
  return out;
}

double grid_l2_distance(const std::vector<CVector>& a, const std::vector<CVector>& b, double h) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]).squaredNorm();
  return std::sqrt(h * s);
}

double grid_l2_norm(const std::vector<CVector>& a, double h) {
  double s = 0.0;
  for (const auto& v : a) s += v.squaredNorm();
  return std::sqrt(h * s);
}

double smooth_bump(double zeta, double center, double radius) {
  const double r = (zeta - center) / radius;
  if (std::abs(r) >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - r * r));
}

}  // namespace phwell
