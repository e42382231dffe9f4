#include <doctest.h>

#include "hnn/families.hpp"

using namespace hnn;

namespace {

GroupWord word(int h0, std::vector<std::pair<int, int>> tail) { return GroupWord{h0, std::move(tail), false}; }

}  // namespace

TEST_SUITE("britton") {
  TEST_CASE("t s t^-1 = theta(s)") {
    const Family f = make_builtin("s3-twist");
    const HNNGroupData& d = *f.group;
    const int e = d.H.identity(), s = d.H.index_of("(12)"), ts = d.H.index_of("(13)");
    const GroupWord w = normal_form(word(e, {{1, s}, {-1, e}}), d);
    CHECK(w.length() == 0);
    CHECK(w.h0 == ts);
    // An element outside S does not pinch.
    const GroupWord v = normal_form(word(e, {{1, d.H.index_of("(23)")}, {-1, e}}), d);
    CHECK(v.length() == 2);
  }

  TEST_CASE("normal forms are idempotent and represent the same element") {
    const Family f = make_builtin("s3-twist");
    const HNNGroupData& d = *f.group;
    std::mt19937_64 rng(4);
    for (int t = 0; t < 300; ++t) {
      const GroupWord raw = random_group_word(rng, 6, d);
      const GroupWord w = normal_form(raw, d);
      CHECK(w.normal);
      CHECK(normal_form(w, d) == w);
      CHECK(w.length() <= raw.length());
      CHECK(oracle_values(multiply(raw, inverse(w, d), d), d).is_identity);
    }
  }

  TEST_CASE("group laws hold on normal forms") {
    for (const char* name : {"z2-free", "z4-sigma2", "s3-twist"}) {
      CAPTURE(name);
      const Family f = make_builtin(name);
      const HNNGroupData& d = *f.group;
      std::mt19937_64 rng(9);
      for (int t = 0; t < 200; ++t) {
        const GroupWord a = random_group_word(rng, 4, d), b = random_group_word(rng, 4, d),
                        c = random_group_word(rng, 4, d);
        CHECK(multiply(multiply(a, b, d), c, d) == multiply(a, multiply(b, c, d), d));
        const GroupWord id = multiply(a, inverse(a, d), d);
        CHECK(id.length() == 0);
        CHECK(id.h0 == d.H.identity());
        CHECK(oracle_values(multiply(inverse(a, d), a, d), d).is_identity);
      }
    }
  }

  TEST_CASE("oracle values") {
    const Family f = make_builtin("z4-sigma2");
    const HNNGroupData& d = *f.group;
    const int g = d.H.index_of("g"), g2 = d.H.index_of("g2");
    CHECK(oracle_values(group_letter(g), d).in_base);
    CHECK_FALSE(oracle_values(group_letter(g), d).is_identity);
    CHECK(oracle_values(word(0, {{1, g2}, {-1, g2}}), d).is_identity);
    CHECK_FALSE(oracle_values(word(0, {{1, g}, {-1, 0}}), d).in_base);
    CHECK_FALSE(oracle_values(t_power(1, d), d).in_base);
  }

  TEST_CASE("invalid subgroup data is rejected") {
    const FiniteGroup z4 = cyclic_group(4);
    SubgroupSpec spec;
    spec.subgroup = {0, 2};
    spec.theta = {{0, 0}, {2, 1}};
    CHECK_THROWS_AS(make_hnn_group_data(z4, spec), Error);
  }
}
