#pragma once

// Run configuration, suite orchestration and report assembly for hnn-forge.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "hnn/families.hpp"
#include "hnn/report.hpp"

namespace hnn {

const std::vector<std::string>& all_suites();

struct RunConfig {
  // A builtin name, or one of function_algebra_quotient, group_algebra_subgroup, explicit.
  std::string family = "z4-sigma2";
  std::string group_file;     // H (or G for quotients)
  std::string subgroup_file;  // S and theta, for group_algebra_subgroup
  std::string structure_file; // explicit structure constants
  std::vector<std::string> normal_subgroup;  // labels of N, for function_algebra_quotient
  std::vector<std::string> automorphism;     // optional image of each coset, by coset label
  int L = 2;
  Tolerances tol;
  std::vector<std::string> suites = all_suites();
  std::uint64_t seed = 1;
  int dim_cap = -1;  // <= 0: HNN_FORGE_DIM_CAP or the built-in default
  std::string out;
  std::filesystem::path base_dir;  // relative paths are resolved here

  // Throws Config when a field is out of range or a referenced file is missing.
  void validate() const;
  nlohmann::json to_json() const;
};

// key = value lines; values are quoted strings, numbers or [lists]. `#`
// starts a comment and `[section]` headers prefix the keys that follow with
// "section.". Throws Config on syntax errors and unknown keys.
RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path);

Family build_family(const RunConfig& cfg);

ReportDocument run(const RunConfig& cfg);

enum ExitCode : int { kExitPass = 0, kExitCheckFailure = 1, kExitConfigError = 2 };

}  // namespace hnn
