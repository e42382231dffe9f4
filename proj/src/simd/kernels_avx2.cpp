#include <immintrin.h>

#include "hnn/simd.hpp"

namespace hnn::simd {
namespace {

// Two complex doubles per register: [r0, i0, r1, i1].

cplx dotc_avx2(const cplx* x, const cplx* y, std::size_t n) {
  const double* xp = reinterpret_cast<const double*>(x);
  const double* yp = reinterpret_cast<const double*>(y);
  __m256d same = _mm256_setzero_pd();   // xr*yr, xi*yi
  __m256d cross = _mm256_setzero_pd();  // xr*yi, xi*yr
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xp + 2 * i);
    const __m256d yv = _mm256_loadu_pd(yp + 2 * i);
    same = _mm256_fmadd_pd(xv, yv, same);
    cross = _mm256_fmadd_pd(xv, _mm256_permute_pd(yv, 0b0101), cross);
  }
  alignas(32) double s[4], c[4];
  _mm256_store_pd(s, same);
  _mm256_store_pd(c, cross);
  double re = s[0] + s[1] + s[2] + s[3];
  double im = c[0] - c[1] + c[2] - c[3];
  for (; i < n; ++i) {
    re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return {re, im};
}

void axpy_avx2(cplx a, const cplx* x, cplx* y, std::size_t n) {
  const double* xp = reinterpret_cast<const double*>(x);
  double* yp = reinterpret_cast<double*>(y);
  const __m256d ar = _mm256_set1_pd(a.real());
  const __m256d ai = _mm256_set1_pd(a.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xp + 2 * i);
    const __m256d xs = _mm256_permute_pd(xv, 0b0101);  // [xi, xr, ...]
    // [ar*xr - ai*xi, ar*xi + ai*xr]
    const __m256d prod = _mm256_fmaddsub_pd(ar, xv, _mm256_mul_pd(ai, xs));
    _mm256_storeu_pd(yp + 2 * i, _mm256_add_pd(_mm256_loadu_pd(yp + 2 * i), prod));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void gemv_avx2(const cplx* m, std::size_t rows, std::size_t cols, std::size_t ld,
               const cplx* v, cplx* out) {
  for (std::size_t r = 0; r < rows; ++r) out[r] = 0.0;
  for (std::size_t c = 0; c < cols; ++c) axpy_avx2(v[c], m + c * ld, out, rows);
}

}  // namespace

const KernelTable& avx2_table() noexcept {
  static const KernelTable table{&dotc_avx2, &axpy_avx2, &gemv_avx2, "avx2"};
  return table;
}

}  // namespace hnn::simd
