#include <doctest.h>

#include "hnn/families.hpp"
#include "hnn/jvkk.hpp"

using namespace hnn;

namespace {

void require_pass(const CheckReport& r) {
  for (const auto& c : r.checks()) {
    CAPTURE(c.name);
    CAPTURE(c.residual);
    CHECK(c.pass);
  }
}

}  // namespace

TEST_SUITE("jvkk") {
  TEST_CASE("GNS dimensions on z4-sigma2") {
    const HNNInputPtr in = make_builtin("z4-sigma2").input;
    const JVData jv = build_jv(in, 2);
    CHECK(jv.H.dim == 17);
    CHECK(jv.K.dim == 16);
    CHECK(jv.F_aug.rows() == 17);
    CHECK(jv.F_aug.cols() == 17);
    CHECK(jv.H.sector_orthogonality() < 1e-10);
    CHECK(jv.K.sector_orthogonality() < 1e-10);
  }

  TEST_CASE("all Julg-Valette checks pass on every builtin") {
    for (const auto& name : builtin_names()) {
      CAPTURE(name);
      const HNNInputPtr in = make_builtin(name).input;
      const JVData jv = build_jv(in, 2);
      require_pass(verify_gns(jv));
      require_pass(verify_commutators(jv));
      require_pass(verify_augmented(jv));
      const HomotopyResult h = homotopy(jv);
      require_pass(h.report);
      CHECK(h.path.samples.size() == 5);
    }
  }

  TEST_CASE("F is unitary and script_F is a partial isometry with defect p") {
    const HNNInputPtr in = make_builtin("z2-free").input;
    const JVData jv = build_jv(in, 3);
    const Mat& F = jv.F;
    CHECK((F * F.adjoint() - Mat::Identity(F.rows(), F.rows())).cwiseAbs().maxCoeff() < 1e-9);
    const Mat& S = jv.script_F;
    const int h = static_cast<int>(S.cols());
    CHECK((S.adjoint() * S - (Mat::Identity(h, h) - jv.p)).cwiseAbs().maxCoeff() < 1e-9);
    CHECK((jv.p * jv.p - jv.p).cwiseAbs().maxCoeff() < 1e-12);
  }

  TEST_CASE("lemma identities") {
    require_pass(verify_lemma_iso(make_builtin("z4-sigma2").input, 3));
    require_pass(verify_lemma_iso(make_builtin("s3-quotient").input, 2));
    require_pass(verify_lemma_iso(make_builtin("trivial").input, 3));
  }

  TEST_CASE("homotopy endpoints on a larger truncation") {
    const HNNInputPtr in = make_builtin("z4-sigma2").input;
    const JVData jv = build_jv(in, 3);
    HomotopyOptions opts;
    opts.samples = {0.0, 0.5, 1.0};
    opts.random_words = 10;
    opts.word_length = 2;
    const HomotopyResult h = homotopy(jv, opts);
    require_pass(h.report);
    const Mat& v0 = h.path.samples.front().v_s;
    CHECK((v0 - Mat::Identity(v0.rows(), v0.cols())).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((h.path.samples.back().v_s - jv.v).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(h.path.branch_point);
  }

  TEST_CASE("rank-one profile") {
    Vec a(3), b(2);
    a << 1, 2, 2;
    b << 0, 1;
    const RankOneProfile p = rank_one_profile(a * b.adjoint());
    CHECK(std::abs(p.top - 3.0) < 1e-12);
    CHECK(p.second < 1e-12);
    CHECK(std::abs(std::abs(p.top_left.dot(a / 3.0)) - 1.0) < 1e-12);
    CHECK(describe_mask("H", 5, 17) == "H (5 of 17)");
  }

  TEST_CASE("the GNS cap is enforced") {
    const HNNInputPtr in = make_builtin("s3-twist").input;
    CHECK_THROWS_AS(build_gns_trunc(in, GnsSide::H, 3, 20), Error);
  }
}
