#include <doctest.h>

#include <random>

#include "hnn/starcore.hpp"

using namespace hnn;

namespace {

Vec random_element(const MultiMatrixAlgebra& a, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Vec v(a.linear_dim());
  for (auto& x : v) x = {g(rng), g(rng)};
  return v;
}

double max_abs(const Mat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_SUITE("starcore") {
  TEST_CASE("multimatrix product and adjoint agree with the block realization") {
    const auto alg = make_multimatrix({1, 2, 3});
    CHECK(alg->linear_dim() == 14);
    CHECK(alg->realization_dim() == 6);
    std::mt19937_64 rng(1);
    for (int t = 0; t < 10; ++t) {
      const Vec x = random_element(*alg, rng), y = random_element(*alg, rng), z = random_element(*alg, rng);
      CHECK(max_abs(alg->realize(alg->multiply(x, y)) - alg->realize(x) * alg->realize(y)) < 1e-12);
      CHECK(max_abs(alg->realize(alg->adjoint(x)) - alg->realize(x).adjoint()) < 1e-14);
      CHECK((alg->multiply(alg->multiply(x, y), z) - alg->multiply(x, alg->multiply(y, z))).norm() < 1e-11);
      CHECK((alg->multiply(alg->unit(), x) - x).norm() < 1e-14);
      CHECK((alg->left_multiplication(x) * y - alg->multiply(x, y)).norm() < 1e-12);
      CHECK((alg->right_multiplication(y) * x - alg->multiply(x, y)).norm() < 1e-12);
    }
  }

  TEST_CASE("matrix units sit at the documented offsets") {
    const auto alg = make_multimatrix({2, 2});
    const Vec e = alg->matrix_unit(1, 0, 1);
    CHECK(std::abs(e(alg->offset(1) + 0 + 1 * 2) - 1.0) == 0.0);
    CHECK(std::abs(alg->operator_norm(e) - 1.0) < 1e-12);
  }

  TEST_CASE("elements of different algebra objects do not mix") {
    const auto a1 = make_multimatrix({2});
    const auto a2 = make_multimatrix({2});
    const AlgElement x = AlgElement::unit(a1), y = AlgElement::unit(a2);
    CHECK_THROWS_AS(x * y, Error);
    CHECK_NOTHROW(x * x);
  }

  TEST_CASE("states validate normalization and positivity") {
    const auto alg = make_multimatrix({1, 1});
    CHECK_NOTHROW(State(alg, Vec::Constant(2, 0.5)));
    Vec bad(2);
    bad << 1.5, -0.5;
    CHECK_THROWS_AS(State(alg, bad), Error);
    Vec half(2);
    half << 1.0, 0.0;
    const State pure(alg, half);
    CHECK_FALSE(pure.faithful());
  }

  TEST_CASE("gram quotient removes the kernel of a degenerate form") {
    std::mt19937_64 rng(5);
    Mat v = Mat::Random(6, 3);
    const Mat g = v * v.adjoint();  // rank 3 on 6 vectors
    const FHilbert h = gram_quotient(g);
    CHECK(h.dim() == 3);
    CHECK(h.kernel_dim == 3);
    CHECK(max_abs(h.onb.adjoint() * g * h.onb - Mat::Identity(3, 3)) < 1e-10);
  }

  TEST_CASE("first fit keeps the earliest independent vectors") {
    Mat cols(3, 4);
    cols << 1, 2, 0, 1,
            0, 0, 1, 1,
            0, 0, 0, 0;
    const Mat g = cols.adjoint() * cols;
    const FirstFitBasis fb = first_fit_basis(g);
    REQUIRE(fb.selected.size() == 2);
    CHECK(fb.selected[0] == 0);
    CHECK(fb.selected[1] == 2);
    CHECK(max_abs(fb.onb.adjoint() * g * fb.onb - Mat::Identity(fb.onb.cols(), fb.onb.cols())) < 1e-12);
  }

  TEST_CASE("conditional expectation onto the diagonal of M2") {
    const auto alg = make_multimatrix({2});
    const State tr(alg, (alg->unit() * 0.5).conjugate());
    const GnsSpace gns = gns_space(alg, tr);
    CHECK(gns.space.dim() == 4);
    const CondExpectation E =
        conditional_expectation(alg, {alg->matrix_unit(0, 0, 0), alg->matrix_unit(0, 1, 1)}, tr);
    CHECK(E.image_dim() == 2);
    CHECK(max_abs(E.projection * E.projection - E.projection) < 1e-12);
    std::mt19937_64 rng(2);
    const Vec x = random_element(*alg, rng);
    const Vec d = E.apply(x);
    CHECK(std::abs(d(2)) < 1e-12);  // entries (1,0) and (0,1) in column-major order
    CHECK(std::abs(d(1)) < 1e-12);
    // Bimodule property E(b x b') = b E(x) b' for diagonal b, b'.
    const Vec b = alg->matrix_unit(0, 0, 0) * cplx(2.0) + alg->matrix_unit(0, 1, 1) * cplx(0, 1);
    CHECK((E.apply(alg->multiply(b, alg->multiply(x, b))) - alg->multiply(b, alg->multiply(d, b))).norm() < 1e-12);
    const Mat ad = E.adapted_basis();
    CHECK(max_abs(ad.adjoint() * tr.gram() * ad - Mat::Identity(4, 4)) < 1e-12);
  }

  TEST_CASE("matrix JSON round trip") {
    Mat m(2, 2);
    m << cplx(1, 2), 3, cplx(0, -1), 0.5;
    CHECK(max_abs(matrix_from_json(matrix_to_json(m)) - m) == 0.0);
  }
}
