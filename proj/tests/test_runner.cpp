#include <doctest.h>

#include <cmath>
#include <functional>

#include "hnn/runner.hpp"

using namespace hnn;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InvalidState;
}

}  // namespace

TEST_SUITE("runner") {
  TEST_CASE("config parsing") {
    const RunConfig c = parse_config(R"(
# comment
family = "group_algebra_subgroup"   # trailing comment
group = "data/groups/z4.json"
subgroup = "data/subgroups/z4-sigma2.json"
L = 3
seed = 42
suites = ["construction", "fock"]
dim_cap = 5000

[tolerances]
alg = 1e-10
gram = 2e-8
)",
                                     HNN_SOURCE_DIR);
    CHECK(c.family == "group_algebra_subgroup");
    CHECK(c.L == 3);
    CHECK(c.seed == 42);
    CHECK(c.dim_cap == 5000);
    CHECK(c.suites == std::vector<std::string>{"construction", "fock"});
    CHECK(c.tol.alg == doctest::Approx(1e-10));
    CHECK(c.tol.gram == doctest::Approx(2e-8));
    CHECK_NOTHROW(c.validate());
    CHECK(build_family(c).input->dim_A() == 4);
  }

  TEST_CASE("config errors") {
    CHECK(kind_of([] { parse_config("nonsense"); }) == ErrorKind::Config);
    CHECK(kind_of([] { parse_config("colour = 3"); }) == ErrorKind::Config);
    CHECK(kind_of([] { parse_config("L = \"two\""); }) == ErrorKind::Config);
    CHECK(kind_of([] { parse_config("family = \"z2-free"); }) == ErrorKind::Config);
    CHECK(kind_of([] { parse_config("L = 0").validate(); }) == ErrorKind::Config);
    CHECK(kind_of([] { parse_config("suites = []").validate(); }) == ErrorKind::Config);
    CHECK(kind_of([] { parse_config("suites = [\"fock\", \"magic\"]").validate(); }) == ErrorKind::Config);
    CHECK(kind_of([] { parse_config("family = \"explicit\"\nstructure = \"missing.json\"").validate(); }) ==
          ErrorKind::Config);
    CHECK(kind_of([] { parse_config("family = \"function_algebra_quotient\"\ngroup = \"x\"").validate(); }) ==
          ErrorKind::Config);
    CHECK(kind_of([] { load_config("/nonexistent/config.toml"); }) == ErrorKind::Config);
  }

  TEST_CASE("builtins validate without files") {
    RunConfig c;
    c.family = "s3-twist";
    CHECK_NOTHROW(c.validate());
    c.family = "no-such-family";
    CHECK_THROWS_AS(c.validate(), Error);
  }

  TEST_CASE("run reports every enabled suite and is deterministic") {
    RunConfig c;
    c.family = "z2-free";
    c.suites = {"construction", "oracle", "fock", "homotopy"};
    c.seed = 5;
    const ReportDocument a = run(c), b = run(c);
    REQUIRE(a.suites.size() == 4);
    CHECK(a.suites[0].suite() == "construction");
    CHECK(a.suites[3].suite() == "homotopy");
    CHECK(a.pass());
    CHECK(a.to_json(false).dump() == b.to_json(false).dump());
    CHECK(a.to_json(true).contains("timing_seconds"));
    CHECK_FALSE(a.to_json(false).contains("timing_seconds"));
    CHECK(a.to_json(false)["config"]["seed"] == 5);
  }

  TEST_CASE("a size limit becomes a failed check, not an exception") {
    RunConfig c;
    c.family = "z4-sigma2";
    c.suites = {"fock"};
    c.dim_cap = 10;
    const ReportDocument d = run(c);
    CHECK_FALSE(d.pass());
    REQUIRE(d.suites.size() == 1);
    CHECK(d.suites[0].failures() == 1);
  }

  TEST_CASE("check reports") {
    CheckReport r("demo");
    r.add("small", 1e-12, 1e-9);
    CHECK(r.pass());
    r.add("nan", std::nan(""), 1.0);
    CHECK_FALSE(r.pass());
    CHECK(r.failures() == 1);
    const auto j = r.to_json();
    CHECK(j["checks"][1]["residual"] == "nan");
    CHECK(j["checks"][0]["mask"] == "full");
    REQUIRE(r.find("small") != nullptr);
    CHECK(r.find("missing") == nullptr);
  }
}
