#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

struct Result {
  int code = -1;
  std::string out;
};

Result run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " \"" HNN_FORGE_BIN "\" " + args + " 2>&1";
  Result r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  while (std::fgets(buf, sizeof buf, p) != nullptr) r.out += buf;
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch_dir() {
  const fs::path d = fs::temp_directory_path() / "hnn_forge_cli_tests";
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST_CASE("list shows the builtins with dimensions") {
  const Result r = run("list");
  CHECK(r.code == 0);
  CHECK(r.out.find("z2-free") != std::string::npos);
  CHECK(r.out.find("s3-quotient") != std::string::npos);
  CHECK(r.out.find("z4-sigma2") != std::string::npos);
  CHECK(r.out.find("42") != std::string::npos);  // s3-quotient Fock dimension at L = 1
}

TEST_CASE("a passing run exits 0") {
  const Result r = run("run --builtin z2-free");
  CHECK(r.code == 0);
  CHECK(r.out.find("overall: pass") != std::string::npos);
}

TEST_CASE("configuration errors exit 2") {
  CHECK(run("run --builtin no-such-family").code == 2);
  CHECK(run("run --builtin z2-free --suite teleport").code == 2);
  CHECK(run("run --builtin z2-free --L 0").code == 2);
  CHECK(run("run --config /nonexistent.toml").code == 2);
  CHECK(run("run").code == 2);
  CHECK(run("").code == 2);

  const fs::path bad = scratch_dir() / "bad.toml";
  std::ofstream(bad) << "family = \"group_algebra_subgroup\"\ngroup = \"missing.json\"\nsubgroup = \"x.json\"\n";
  const Result r = run("run --config " + bad.string());
  CHECK(r.code == 2);
  CHECK(r.out.find("missing.json") != std::string::npos);

  const fs::path broken = scratch_dir() / "broken.json";
  std::ofstream(broken) << "{\"elements\": [\"e\", \"a\"], \"table\": [[\"e\", \"a\"], [\"a\", \"a\"]], \"identity\": \"e\"}";
  const fs::path sub = scratch_dir() / "sub.json";
  std::ofstream(sub) << "{\"subgroup\": [\"e\"]}";
  const fs::path cfg = scratch_dir() / "broken.toml";
  std::ofstream(cfg) << "family = \"group_algebra_subgroup\"\ngroup = \"broken.json\"\nsubgroup = \"sub.json\"\n";
  CHECK(run("run --config " + cfg.string()).code == 2);
}

TEST_CASE("check failures exit 1") {
  const Result r = run("run --builtin z4-sigma2 --suite fock", "HNN_FORGE_DIM_CAP=10");
  CHECK(r.code == 1);
  CHECK(r.out.find("exceeds the cap") != std::string::npos);
  CHECK(run("run --builtin z2-free", "HNN_FORGE_DIM_CAP=lots").code == 2);
}

TEST_CASE("reports are byte-identical for the same config and seed") {
  const fs::path a = scratch_dir() / "a.json", b = scratch_dir() / "b.json", c = scratch_dir() / "c.json";
  const std::string base = "run --builtin z4-sigma2 --suite wordalg oracle fock --no-timing --seed 3 --out ";
  REQUIRE(run(base + a.string()).code == 0);
  REQUIRE(run(base + b.string()).code == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(slurp(a).find("\"seed\": 3") != std::string::npos);
  REQUIRE(run("run --builtin z4-sigma2 --suite wordalg oracle fock --no-timing --seed 4 --out " + c.string()).code == 0);
  CHECK(slurp(a) != slurp(c));
}

TEST_CASE("config files resolve paths relative to themselves") {
  const Result r = run("run --config " HNN_SOURCE_DIR "/configs/z4-sigma2.toml --suite construction oracle");
  CHECK(r.code == 0);
}

TEST_CASE("the JSON report carries name, residual, threshold, mask and pass per check") {
  const Result r = run("run --builtin trivial --suite oracle --json --no-timing");
  CHECK(r.code == 0);
  for (const char* key : {"\"name\"", "\"residual\"", "\"threshold\"", "\"mask\"", "\"pass\""})
    CHECK(r.out.find(key) != std::string::npos);
}
