#include <immintrin.h>

#include "phwell/simd/kernels.hpp"

namespace phwell::simd {

namespace {

void axpy(std::size_t n, double a, const double* x, double* y) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void add_scaled(std::size_t n, const double* x, double a, const double* y, double* out) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(out + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(y + i), _mm256_loadu_pd(x + i)));
  }
  for (; i < n; ++i) out[i] = x[i] + a * y[i];
}

void caxpy(std::size_t n, double ar, double ai, const double* xr, const double* xi, double* yr, double* yi) {
  const __m256d var = _mm256_set1_pd(ar);
  const __m256d vai = _mm256_set1_pd(ai);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d r = _mm256_loadu_pd(xr + i);
    const __m256d m = _mm256_loadu_pd(xi + i);
    __m256d accr = _mm256_fmadd_pd(var, r, _mm256_loadu_pd(yr + i));
    accr = _mm256_fnmadd_pd(vai, m, accr);
    __m256d acci = _mm256_fmadd_pd(var, m, _mm256_loadu_pd(yi + i));
    acci = _mm256_fmadd_pd(vai, r, acci);
    _mm256_storeu_pd(yr + i, accr);
    _mm256_storeu_pd(yi + i, acci);
  }
  for (; i < n; ++i) {
    yr[i] += ar * xr[i] - ai * xi[i];
    yi[i] += ar * xi[i] + ai * xr[i];
  }
}

void cmul_acc(std::size_t n, const double* ar, const double* ai, const double* xr, const double* xi, double* yr,
              double* yi) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d a = _mm256_loadu_pd(ar + i);
    const __m256d b = _mm256_loadu_pd(ai + i);
    const __m256d r = _mm256_loadu_pd(xr + i);
    const __m256d m = _mm256_loadu_pd(xi + i);
    __m256d accr = _mm256_fmadd_pd(a, r, _mm256_loadu_pd(yr + i));
    accr = _mm256_fnmadd_pd(b, m, accr);
    __m256d acci = _mm256_fmadd_pd(a, m, _mm256_loadu_pd(yi + i));
    acci = _mm256_fmadd_pd(b, r, acci);
    _mm256_storeu_pd(yr + i, accr);
    _mm256_storeu_pd(yi + i, acci);
  }
  for (; i < n; ++i) {
    yr[i] += ar[i] * xr[i] - ai[i] * xi[i];
    yi[i] += ar[i] * xi[i] + ai[i] * xr[i];
  }
}

void two_point(std::size_t n, double alpha, double beta, const double* v, double* out) {
  const __m256d va = _mm256_set1_pd(alpha);
  const __m256d vb = _mm256_set1_pd(beta);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d lo = _mm256_loadu_pd(v + i);
    const __m256d hi = _mm256_loadu_pd(v + i + 1);
    _mm256_storeu_pd(out + i, _mm256_fmadd_pd(va, lo, _mm256_mul_pd(vb, hi)));
  }
  for (; i < n; ++i) out[i] = alpha * v[i] + beta * v[i + 1];
}

void difference(std::size_t n, double scale, const double* f, double* out) {
  const __m256d vs = _mm256_set1_pd(scale);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d lo = _mm256_loadu_pd(f + i);
    const __m256d hi = _mm256_loadu_pd(f + i + 1);
    _mm256_storeu_pd(out + i, _mm256_mul_pd(vs, _mm256_sub_pd(hi, lo)));
  }
  for (; i < n; ++i) out[i] = scale * (f[i + 1] - f[i]);
}

double dot(std::size_t n, const double* x, const double* y) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
  }
  const __m256d acc = _mm256_add_pd(acc0, acc1);
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double s = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable table{"avx2", axpy, add_scaled, caxpy, cmul_acc, two_point, difference, dot};
  return table;
}

}  // namespace phwell::simd
