#include <doctest.h>

#include <random>
#include <vector>

#include "hnn/simd.hpp"

using hnn::simd::cplx;

namespace {

std::vector<cplx> random_vec(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g;
  std::vector<cplx> v(n);
  for (auto& x : v) x = {g(rng), g(rng)};
  return v;
}

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_SUITE("simd") {
  TEST_CASE("scalar kernels match naive loops") {
    std::mt19937_64 rng(3);
    const auto& k = hnn::simd::scalar_kernels();
    for (std::size_t n : {0u, 1u, 5u, 16u}) {
      const auto x = random_vec(rng, n), y = random_vec(rng, n);
      cplx ref = 0.0;
      for (std::size_t i = 0; i < n; ++i) ref += std::conj(x[i]) * y[i];
      CHECK(std::abs(k.dotc(x.data(), y.data(), n) - ref) < 1e-12);
    }
  }

  TEST_CASE("AVX2 kernels agree with the scalar kernels") {
    const auto* avx = hnn::simd::avx2_kernels();
    if (avx == nullptr) {
      MESSAGE("AVX2 kernels unavailable on this build or CPU; nothing to compare");
      return;
    }
    const auto& sc = hnn::simd::scalar_kernels();
    std::mt19937_64 rng(11);
    // Odd lengths and offset starts exercise the tails and unaligned loads.
    for (std::size_t n = 0; n <= 37; ++n)
      for (std::size_t off : {0u, 1u}) {
        auto x = random_vec(rng, n + off), y = random_vec(rng, n + off);
        const cplx d1 = sc.dotc(x.data() + off, y.data() + off, n);
        const cplx d2 = avx->dotc(x.data() + off, y.data() + off, n);
        CHECK(std::abs(d1 - d2) <= 1e-12 * (1.0 + std::abs(d1)));

        auto y1 = y, y2 = y;
        const cplx a{0.3, -1.7};
        sc.axpy(a, x.data() + off, y1.data() + off, n);
        avx->axpy(a, x.data() + off, y2.data() + off, n);
        CHECK(max_diff(y1, y2) <= 1e-13);
      }
    for (std::size_t rows : {1u, 3u, 8u, 13u})
      for (std::size_t cols : {1u, 4u, 9u}) {
        const std::size_t ld = rows + 2;
        const auto m = random_vec(rng, ld * cols), v = random_vec(rng, cols);
        std::vector<cplx> o1(rows), o2(rows);
        sc.gemv(m.data(), rows, cols, ld, v.data(), o1.data());
        avx->gemv(m.data(), rows, cols, ld, v.data(), o2.data());
        CHECK(max_diff(o1, o2) <= 1e-12);
      }
  }

  TEST_CASE("dispatch picks a kernel table with a name") {
    const auto& k = hnn::simd::active_kernels();
    CHECK(!k.name.empty());
    if (hnn::simd::avx2_kernels() == nullptr) CHECK(k.name == hnn::simd::scalar_kernels().name);
  }
}
