#pragma once

// Complex double kernels with a scalar reference path and an AVX2 path.
// The active implementation is picked once at startup from CPUID; every
// kernel also exposes its scalar variant so the two can be compared.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace hnn::simd {

using cplx = std::complex<double>;

struct KernelTable {
  // sum_i conj(x_i) * y_i
  cplx (*dotc)(const cplx* x, const cplx* y, std::size_t n);
  // y_i += a * x_i
  void (*axpy)(cplx a, const cplx* x, cplx* y, std::size_t n);
  // out = M * v, M column-major rows x cols with leading dimension ld
  void (*gemv)(const cplx* m, std::size_t rows, std::size_t cols, std::size_t ld,
               const cplx* v, cplx* out);
  std::string_view name;
};

const KernelTable& scalar_kernels() noexcept;
// nullptr when the build or the CPU lacks AVX2+FMA.
const KernelTable* avx2_kernels() noexcept;
const KernelTable& active_kernels() noexcept;

inline cplx dotc(std::span<const cplx> x, std::span<const cplx> y) {
  return active_kernels().dotc(x.data(), y.data(), x.size());
}

inline void axpy(cplx a, std::span<const cplx> x, std::span<cplx> y) {
  active_kernels().axpy(a, x.data(), y.data(), x.size());
}

}  // namespace hnn::simd
