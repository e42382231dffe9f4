#include <doctest.h>

#include "hnn/families.hpp"
#include "hnn/wordalg.hpp"

using namespace hnn;

namespace {

SymbolicElement lambda(const HNNInputPtr& in, int h) { return SymbolicElement::from_a(in, in->A.basis.col(h)); }

double rel_sq(const SymbolicElement& x, const SymbolicElement& y) {
  return norm2(x - y) / std::max({1.0, norm2(x), norm2(y)});
}

}  // namespace

TEST_SUITE("wordalg") {
  TEST_CASE("algebra identities on random elements") {
    for (const char* name : {"z2-free", "z4-sigma2", "s3-quotient"}) {
      CAPTURE(name);
      const HNNInputPtr in = make_builtin(name).input;
      std::mt19937_64 rng(21);
      for (int t = 0; t < 8; ++t) {
        const auto x = random_symbolic(in, rng, 1), y = random_symbolic(in, rng, 1), z = random_symbolic(in, rng, 1);
        CHECK(rel_sq((x * y) * z, x * (y * z)) < 1e-14);
        CHECK(rel_sq(star(x * y), star(y) * star(x)) < 1e-14);
        CHECK(rel_sq(x * (y + z), x * y + x * z) < 1e-14);
        CHECK(std::real(norm2(x)) >= 0.0);
      }
    }
  }

  TEST_CASE("u is unitary and implements theta") {
    for (const auto& name : builtin_names()) {
      CAPTURE(name);
      const HNNInputPtr in = make_builtin(name).input;
      const auto u = SymbolicElement::generator(in, 1), us = SymbolicElement::generator(in, -1);
      const auto one = SymbolicElement::unit(in);
      CHECK(distance(u * us, one) < 1e-10);
      CHECK(distance(us * u, one) < 1e-10);
      for (int j = 0; j < in->dim_B(); ++j) {
        const Vec b = in->B.basis.col(j);
        const auto lhs = u * SymbolicElement::from_a(in, in->iota.morphism.action * b) * us;
        CHECK(distance(lhs, SymbolicElement::from_a(in, in->theta.morphism.action * b)) < 1e-10);
      }
    }
  }

  TEST_CASE("phi_m is a state that vanishes on reduced words") {
    const HNNInputPtr in = make_builtin("z4-sigma2").input;
    const auto one = SymbolicElement::unit(in);
    CHECK(std::abs(phi_m(one) - 1.0) < 1e-14);
    for (const auto& w : reduced_basis_words(in, 2)) CHECK(std::abs(phi_m(w)) < 1e-12);
    std::mt19937_64 rng(2);
    for (int t = 0; t < 10; ++t) {
      const auto x = random_symbolic(in, rng, 2);
      CHECK(std::abs(phi_m(star(x)) - std::conj(phi_m(x))) < 1e-12);
      CHECK(std::abs(std::imag(phi_m(star(x) * x))) < 1e-10);
      CHECK((expect_A(SymbolicElement::from_a(in, expect_A(x))) - expect_A(x)).norm() < 1e-12);
    }
  }

  TEST_CASE("group elements multiply like the HNN group") {
    const Family f = make_builtin("z4-sigma2");
    const HNNInputPtr& in = f.input;
    const HNNGroupData& d = *f.group;
    const auto t = SymbolicElement::generator(in, 1), ti = SymbolicElement::generator(in, -1);
    // t g2 t^-1 = g2 and t g t^-1 is a reduced word of length 2.
    CHECK(distance(t * lambda(in, d.H.index_of("g2")) * ti, lambda(in, d.H.index_of("g2"))) < 1e-10);
    const auto w = t * lambda(in, d.H.index_of("g")) * ti;
    CHECK(w.max_length() == 2);
    CHECK(std::abs(phi_m(w)) < 1e-12);
  }

  TEST_CASE("comultiplication: Haar invariance and counit") {
    for (const char* name : {"z2-free", "z4-sigma2", "trivial"}) {
      CAPTURE(name);
      const HNNInputPtr in = make_builtin(name).input;
      const TruncatedFock fk = build_truncated_fock(in, 2);
      const auto one = SymbolicElement::unit(in);
      for (const auto& x : basis_words(in, 2)) {
        const SymbolicTensor d = comultiply(x);
        CHECK(fock_distance(slice_right(d), phi_m(x) * one, fk) < 1e-9);
        CHECK(fock_distance(slice_left(d), phi_m(x) * one, fk) < 1e-9);
      }
      std::mt19937_64 rng(8);
      for (int t = 0; t < 5; ++t) {
        const auto x = random_symbolic(in, rng, 1), y = random_symbolic(in, rng, 1);
        CHECK(std::abs(counit_m(x * y) - counit_m(x) * counit_m(y)) < 1e-9 * (1.0 + std::abs(counit_m(x * y))));
        const auto c1 = random_symbolic(in, rng, 1, 1), c2 = random_symbolic(in, rng, 1, 1);
        CHECK(coassociativity_residual(x, c1, c2, &fk) < 1e-9);
      }
    }
  }

  TEST_CASE("basis word counts") {
    // Trivial family: A = B = C, so only powers of u survive.
    const HNNInputPtr triv = make_builtin("trivial").input;
    CHECK(basis_words(triv, 3).size() == 7);  // 1, u^{+-1}, u^{+-2}, u^{+-3}
    CHECK(reduced_basis_words(triv, 3).size() == 6);
    // z2-free: x0 in C Z/2 (2 choices), letters in the kernel (1 choice each), last letter free.
    const HNNInputPtr z2 = make_builtin("z2-free").input;
    CHECK(basis_words(z2, 1).size() == 2 + 2 * 2 * 2);
  }

  TEST_CASE("symbolic vacuum vectors agree with the Fock operators") {
    const HNNInputPtr in = make_builtin("s3-twist").input;
    const TruncatedFock fk = build_truncated_fock(in, 2);
    FockEvaluator ev(fk);
    std::mt19937_64 rng(6);
    for (int t = 0; t < 10; ++t) {
      const auto x = random_symbolic(in, rng, 2);
      CHECK((ev.apply_vacuum(x) - vacuum_vector(x, fk)).norm() < 1e-10);
      CHECK(std::abs(vacuum_vector(x, fk).squaredNorm() - norm2(x)) < 1e-9 * std::max(1.0, norm2(x)));
    }
    const auto too_long = random_symbolic(in, rng, 3, 1);
    if (too_long.max_length() == 3) CHECK_THROWS_AS(vacuum_vector(too_long, fk), Error);
  }

  TEST_CASE("random elements are reproducible from the seed") {
    const HNNInputPtr in = make_builtin("z4-sigma2").input;
    std::mt19937_64 r1(99), r2(99);
    const auto x = random_symbolic(in, r1, 2), y = random_symbolic(in, r2, 2);
    CHECK(to_string(x, 100) == to_string(y, 100));
  }
}
