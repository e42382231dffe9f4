#include <doctest.h>

#include "hnn/families.hpp"
#include "hnn/wordalg.hpp"

using namespace hnn;

namespace {

double masked_max(const Mat& m, const std::vector<int>& cols) {
  double w = 0.0;
  for (int c : cols) w = std::max(w, m.col(c).cwiseAbs().maxCoeff());
  return w;
}

}  // namespace

TEST_SUITE("fock") {
  TEST_CASE("dimensions") {
    struct Case {
      const char* name;
      int L;
      int dim;
    };
    for (const Case& c : {Case{"z2-free", 1, 10}, Case{"z2-free", 2, 34}, Case{"z4-sigma2", 1, 20},
                          Case{"z4-sigma2", 2, 68}, Case{"s3-quotient", 1, 42}, Case{"trivial", 2, 5}}) {
      CAPTURE(c.name);
      CAPTURE(c.L);
      const HNNInputPtr in = make_builtin(c.name).input;
      const TruncatedFock fk = build_truncated_fock(in, c.L);
      CHECK(fk.total_dim == c.dim);
      CHECK(estimate_fock_dim(*in, c.L) == c.dim);
      CHECK(fk.summands.size() == static_cast<std::size_t>((1 << (c.L + 1)) - 1));
    }
  }

  TEST_CASE("the dimension cap is enforced before building") {
    const HNNInputPtr in = make_builtin("z4-sigma2").input;
    CHECK_THROWS_AS(build_truncated_fock(in, 2, 50), Error);
    try {
      build_truncated_fock(in, 2, 50);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::SizeLimit);
    }
  }

  TEST_CASE("summand Grams are positive and the onb is orthonormal") {
    const HNNInputPtr in = make_builtin("s3-twist").input;
    const TruncatedFock fk = build_truncated_fock(in, 2);
    for (const auto& s : fk.summands) {
      if (s.index_count == 0) continue;
      CHECK((s.gram - s.gram.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
      const Mat id = s.space.onb.adjoint() * s.gram * s.space.onb;
      CHECK((id - Mat::Identity(id.rows(), id.cols())).cwiseAbs().maxCoeff() < 1e-9);
    }
  }

  TEST_CASE("operator identities") {
    for (const auto& name : builtin_names()) {
      CAPTURE(name);
      const HNNInputPtr in = make_builtin(name).input;
      const int L = name == "s3-quotient" || name == "s3-twist" ? 1 : 2;
      const TruncatedFock fk = build_truncated_fock(in, L);
      const FockOperator up = u_epsilon(fk, 1), down = u_epsilon(fk, -1);
      const auto mask = up.masked_coordinates(fk);
      CHECK(!mask.empty());
      const Mat I = Mat::Identity(fk.total_dim, fk.total_dim);
      CHECK((down.matrix - up.matrix.adjoint()).cwiseAbs().maxCoeff() < 1e-10);
      CHECK(masked_max(down.matrix * up.matrix - I, mask) < 1e-10);
      CHECK(masked_max(up.matrix * down.matrix - I, mask) < 1e-10);
      for (int j = 0; j < in->dim_B(); ++j) {
        const Vec b = in->B.basis.col(j);
        const Mat lhs = up.matrix * pi_action(fk, in->iota.morphism.action * b).matrix * down.matrix;
        CHECK(masked_max(lhs - pi_action(fk, in->theta.morphism.action * b).matrix, mask) < 1e-9);
      }
      const Mat Q = vacuum_projection(fk).matrix;
      CHECK((Q * Q - Q).cwiseAbs().maxCoeff() < 1e-12);
      CHECK((Q - Q.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
      CHECK((Q * fk.vacuum - fk.vacuum).norm() < 1e-12);
      for (int i = 0; i < in->dim_A(); ++i)
        for (int k = 0; k < in->dim_A(); ++k) {
          const Vec a = in->A.basis.col(i), c = in->A.basis.col(k);
          const Mat prod = pi_action(fk, a).matrix * pi_action(fk, c).matrix;
          CHECK((prod - pi_action(fk, in->mul(a, c)).matrix).cwiseAbs().maxCoeff() < 1e-10);
        }
    }
  }

  TEST_CASE("GNS consistency of the vacuum") {
    const HNNInputPtr in = make_builtin("z4-sigma2").input;
    const TruncatedFock fk = build_truncated_fock(in, 2);
    FockEvaluator ev(fk);
    std::mt19937_64 rng(12);
    for (int t = 0; t < 40; ++t) {
      const SymbolicElement x = random_symbolic(in, rng, 2);
      const Vec v = ev.apply_vacuum(x);
      CHECK(std::abs(v.squaredNorm() - norm2(x)) < 1e-8 * std::max(1.0, norm2(x)));
      CHECK(std::abs(fk.vacuum.dot(v) - phi_m(x)) < 1e-10);
      CHECK((ev.evaluate(x).matrix * fk.vacuum - v).norm() < 1e-10);
    }
  }

  TEST_CASE("summary JSON lists every summand") {
    const HNNInputPtr in = make_builtin("z2-free").input;
    const TruncatedFock fk = build_truncated_fock(in, 2);
    const auto j = fock_summary_json(fk);
    CHECK(j.dump().find("34") != std::string::npos);
  }
}
