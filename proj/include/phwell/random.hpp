#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "phwell/types.hpp"

namespace phwell {

/// Seeded generator with platform-independent output. std::normal_distribution
/// is implementation-defined, so normals come from Box-Muller over the raw
/// 64-bit engine.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int integer(int lo, int hi) { return lo + static_cast<int>(uniform() * (hi - lo + 1)); }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * M_PI * u2);
    has_spare_ = true;
    return r * std::cos(2.0 * M_PI * u2);
  }

  /// Standard complex Gaussian entries; imaginary parts are zero when `real`.
  CMatrix gaussian(Eigen::Index rows, Eigen::Index cols, bool real = false) {
    CMatrix m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
      for (Eigen::Index i = 0; i < rows; ++i) {
        const double re = normal();
        const double im = real ? 0.0 : normal();
        m(i, j) = Complex(re, im);
      }
    }
    return m;
  }

  CVector unit_vector(Eigen::Index n, bool real = false) {
    CVector v = gaussian(n, 1, real);
    return v / v.norm();
  }

  /// Haar-distributed unitary (orthogonal when real) via QR with sign fix.
  CMatrix unitary(Eigen::Index n, bool real = false) {
    const CMatrix g = gaussian(n, n, real);
    Eigen::HouseholderQR<CMatrix> qr(g);
    CMatrix q = qr.householderQ();
    const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < n; ++j) {
      const double a = std::abs(r(j, j));
      if (a > 0.0) q.col(j) *= r(j, j) / a;
    }
    return q;
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace phwell
