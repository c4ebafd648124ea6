#include <cstdlib>
#include <string_view>

#include "phwell/simd/kernels.hpp"

namespace phwell::simd {

#if defined(PHWELL_HAVE_AVX2)
const KernelTable& avx2_table();
#endif

const KernelTable* avx2_kernels() {
#if defined(PHWELL_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported ? &avx2_table() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable* kernels_by_name(std::string_view name) {
  if (name == "scalar") return &scalar_kernels();
  if (name == "avx2") return avx2_kernels();
  return nullptr;
}

const KernelTable& active_kernels() {
  static const KernelTable& chosen = [] () -> const KernelTable& {
    const char* env = std::getenv("PHWELL_SIMD");
    if (env != nullptr && std::string_view(env) == "scalar") return scalar_kernels();
    const KernelTable* fast = avx2_kernels();
    return fast != nullptr ? *fast : scalar_kernels();
  }();
  return chosen;
}

}  // namespace phwell::simd
