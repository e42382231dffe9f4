#include "hnn/simd.hpp"

namespace hnn::simd {

#ifdef HNN_HAVE_AVX2
const KernelTable& avx2_table() noexcept;
#endif

const KernelTable* avx2_kernels() noexcept {
#ifdef HNN_HAVE_AVX2
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported ? &avx2_table() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active_kernels() noexcept {
  static const KernelTable& table = avx2_kernels() ? *avx2_kernels() : scalar_kernels();
  return table;
}

}  // namespace hnn::simd
