#include <doctest.h>

#include "hnn/families.hpp"
#include "hnn/fock.hpp"

using namespace hnn;

TEST_SUITE("qgroup") {
  TEST_CASE("function and group algebras of S3 satisfy the quantum group axioms") {
    const FiniteGroup s3 = symmetric_group_s3();
    for (const FiniteCQG& q : {function_algebra_qg(s3), group_algebra_qg(s3)}) {
      CAPTURE(q.name);
      const CqgResiduals r = cqg_residuals(q);
      CHECK(r.coassociativity < 1e-12);
      CHECK(r.multiplicative < 1e-12);
      CHECK(r.involutive < 1e-12);
      CHECK(r.left_density_rank == q.dim() * q.dim());
      CHECK(r.right_density_rank == q.dim() * q.dim());
      CHECK(r.haar_left < 1e-12);
      CHECK(r.haar_right < 1e-12);
      CHECK(r.counit_multiplicative < 1e-12);
    }
  }

  TEST_CASE("Haar state and counit of a group algebra") {
    const FiniteGroup s3 = symmetric_group_s3();
    const FiniteCQG q = group_algebra_qg(s3);
    CHECK(q.algebra->block_dims() == std::vector<int>{1, 1, 2});
    for (int g = 0; g < s3.order(); ++g) {
      CHECK(std::abs(q.haar_of(q.basis_element(g)) - (g == s3.identity() ? 1.0 : 0.0)) < 1e-12);
      CHECK(std::abs(q.counit_of(q.basis_element(g)) - 1.0) < 1e-12);
    }
  }

  TEST_CASE("Haar state of a function algebra is the uniform average") {
    const FiniteCQG q = function_algebra_qg(cyclic_group(5));
    for (int g = 0; g < 5; ++g) CHECK(std::abs(q.haar_of(q.basis_element(g)) - 0.2) < 1e-12);
  }

  TEST_CASE("every builtin HNN input passes its construction residuals") {
    for (const auto& name : builtin_names()) {
      CAPTURE(name);
      const Family f = make_builtin(name);
      const HNNInput& in = *f.input;
      const HnnResiduals r = hnn_residuals(in);
      CHECK(in.iota.intertwines);
      CHECK(in.theta.intertwines);
      CHECK(r.invariance_plus < 1e-10);
      CHECK(r.invariance_minus < 1e-10);
      CHECK(r.haar_theta < 1e-12);
      CHECK(r.haar_iota < 1e-12);
      CHECK(r.restriction_plus < 1e-12);
      CHECK(r.restriction_minus < 1e-12);
      for (int s : {1, -1}) {
        const Mat& ad = in.adapted[sign_index(s)];
        CHECK(ad.cols() == in.dim_A());
        const Mat ortho = ad.adjoint() * in.gram_A * ad - Mat::Identity(ad.cols(), ad.cols());
        CHECK(ortho.cwiseAbs().maxCoeff() < 1e-12);
        // The unit comes first in the adapted basis.
        CHECK((ad.col(0) - in.alg().unit()).norm() < 1e-12);
      }
    }
  }

  TEST_CASE("builtin descriptors report dimensions") {
    const auto list = list_builtins();
    REQUIRE(list.size() >= 3);
    for (const auto& d : list) {
      const Family f = make_builtin(d.name);
      CHECK(d.dim_A == f.input->dim_A());
      CHECK(d.dim_B == f.input->dim_B());
      CHECK(d.fock_dim_L1 == estimate_fock_dim(*f.input, 1));
    }
  }

  TEST_CASE("a non-subgroup or a non-homomorphism is rejected") {
    const FiniteGroup z4 = cyclic_group(4);
    SubgroupSpec bad;
    bad.subgroup = {0, 1};
    CHECK_THROWS_AS(group_algebra_subgroup(z4, bad), Error);
    SubgroupSpec twisted;
    twisted.subgroup = {0, 2};
    twisted.theta = {{0, 2}, {2, 0}};
    CHECK_THROWS_AS(group_algebra_subgroup(z4, twisted), Error);
  }

  TEST_CASE("a quotient group is labelled by coset representatives") {
    const FiniteGroup s3 = symmetric_group_s3();
    const QuotientGroup q = quotient_group(s3, {0, 1, 2});
    CHECK(q.group.order() == 2);
    CHECK(q.coset_of[3] == q.coset_of[5]);
    CHECK(q.coset_of[0] != q.coset_of[3]);
  }
}
