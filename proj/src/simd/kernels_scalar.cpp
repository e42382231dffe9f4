#include "hnn/simd.hpp"

namespace hnn::simd {
namespace {

cplx dotc_scalar(const cplx* x, const cplx* y, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    const double yr = y[i].real(), yi = y[i].imag();
    re += xr * yr + xi * yi;
    im += xr * yi - xi * yr;
  }
  return {re, im};
}

void axpy_scalar(cplx a, const cplx* x, cplx* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void gemv_scalar(const cplx* m, std::size_t rows, std::size_t cols, std::size_t ld,
                 const cplx* v, cplx* out) {
  for (std::size_t r = 0; r < rows; ++r) out[r] = 0.0;
  for (std::size_t c = 0; c < cols; ++c) axpy_scalar(v[c], m + c * ld, out, rows);
}

}  // namespace

const KernelTable& scalar_kernels() noexcept {
  static const KernelTable table{&dotc_scalar, &axpy_scalar, &gemv_scalar, "scalar"};
  return table;
}

}  // namespace hnn::simd
