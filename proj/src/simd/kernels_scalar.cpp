#include "phwell/simd/kernels.hpp"

namespace phwell::simd {

namespace {

void axpy(std::size_t n, double a, const double* x, double* y) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void add_scaled(std::size_t n, const double* x, double a, const double* y, double* out) {
  for (std::size_t i = 0; i < n; ++i) out[i] = x[i] + a * y[i];
}

void caxpy(std::size_t n, double ar, double ai, const double* xr, const double* xi, double* yr, double* yi) {
  for (std::size_t i = 0; i < n; ++i) {
    yr[i] += ar * xr[i] - ai * xi[i];
    yi[i] += ar * xi[i] + ai * xr[i];
  }
}

void cmul_acc(std::size_t n, const double* ar, const double* ai, const double* xr, const double* xi, double* yr,
              double* yi) {
  for (std::size_t i = 0; i < n; ++i) {
    yr[i] += ar[i] * xr[i] - ai[i] * xi[i];
    yi[i] += ar[i] * xi[i] + ai[i] * xr[i];
  }
}

void two_point(std::size_t n, double alpha, double beta, const double* v, double* out) {
  for (std::size_t i = 0; i < n; ++i) out[i] = alpha * v[i] + beta * v[i + 1];
}

void difference(std::size_t n, double scale, const double* f, double* out) {
  for (std::size_t i = 0; i < n; ++i) out[i] = scale * (f[i + 1] - f[i]);
}

double dot(std::size_t n, const double* x, const double* y) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{"scalar", axpy, add_scaled, caxpy, cmul_acc, two_point, difference, dot};
  return table;
}

}  // namespace phwell::simd
