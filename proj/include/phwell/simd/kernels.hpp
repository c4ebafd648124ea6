#pragma once

// Array kernels used by the method-of-lines simulator. Complex fields are
// stored as separate real and imaginary planes. A scalar reference table is
// always present; an AVX2+FMA table is compiled in when the toolchain
// supports it and selected at runtime when the CPU does.

#include <cstddef>
#include <string_view>

namespace phwell::simd {

struct KernelTable {
  const char* name;
  /// y += a x
  void (*axpy)(std::size_t n, double a, const double* x, double* y);
  /// out = x + a y
  void (*add_scaled)(std::size_t n, const double* x, double a, const double* y, double* out);
  /// y += (ar + i ai) x, complex scalar times complex array
  void (*caxpy)(std::size_t n, double ar, double ai, const double* xr, const double* xi, double* yr,
                double* yi);
  /// y += a .* x, elementwise complex product
  void (*cmul_acc)(std::size_t n, const double* ar, const double* ai, const double* xr, const double* xi,
                   double* yr, double* yi);
  /// out[i] = alpha v[i] + beta v[i+1] for i < n
  void (*two_point)(std::size_t n, double alpha, double beta, const double* v, double* out);
  /// out[i] = scale (f[i+1] - f[i]) for i < n
  void (*difference)(std::size_t n, double scale, const double* f, double* out);
  /// sum x[i] y[i]
  double (*dot)(std::size_t n, const double* x, const double* y);
};

const KernelTable& scalar_kernels();

/// nullptr when not compiled in or unsupported by this CPU.
const KernelTable* avx2_kernels();

/// AVX2 when available, unless PHWELL_SIMD=scalar is set.
const KernelTable& active_kernels();

/// Looks up "scalar" or "avx2"; nullptr when unavailable.
const KernelTable* kernels_by_name(std::string_view name);

}  // namespace phwell::simd
