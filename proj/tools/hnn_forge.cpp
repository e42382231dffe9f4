#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>

#include <CLI11.hpp>

#include "hnn/families.hpp"
#include "hnn/fock.hpp"
#include "hnn/runner.hpp"

namespace {

int cmd_list() {
  std::cout << std::left << std::setw(14) << "name" << std::setw(7) << "dim A" << std::setw(7) << "dim B"
            << std::setw(12) << "Fock L=1" << "description\n";
  for (const auto& d : hnn::list_builtins())
    std::cout << std::setw(14) << d.name << std::setw(7) << d.dim_A << std::setw(7) << d.dim_B << std::setw(12)
              << d.fock_dim_L1 << d.description << "\n";
  return hnn::kExitPass;
}

struct RunArgs {
  std::string config, builtin, out;
  int L = -1;
  int dim_cap = -1;
  std::vector<std::string> suites;
  std::int64_t seed = -1;
  bool no_timing = false;
  bool json = false;
};

int cmd_run(const RunArgs& a) {
  hnn::RunConfig cfg;
  try {
    if (!a.config.empty()) {
      cfg = hnn::load_config(a.config);
    } else {
      cfg.family = a.builtin;
    }
    if (a.L > 0) cfg.L = a.L;
    if (!a.suites.empty()) cfg.suites = a.suites;
    if (a.seed >= 0) cfg.seed = static_cast<std::uint64_t>(a.seed);
    if (a.dim_cap > 0) cfg.dim_cap = a.dim_cap;
    if (!a.out.empty()) cfg.out = a.out;
    cfg.validate();
    (void)hnn::default_dim_cap();  // rejects a malformed HNN_FORGE_DIM_CAP up front
  } catch (const hnn::Error& e) {
    std::cerr << "hnn-forge: " << e.what() << "\n";
    return hnn::kExitConfigError;
  }

  hnn::ReportDocument doc;
  try {
    doc = hnn::run(cfg);
  } catch (const hnn::Error& e) {
    // Failures inside suites are recorded as checks; anything reaching here
    // happened while reading or assembling the input family.
    std::cerr << "hnn-forge: " << e.what() << "\n";
    return hnn::kExitConfigError;
  }

  const std::string json = doc.to_json(!a.no_timing).dump(2) + "\n";
  if (a.json) {
    std::cout << json;
  } else {
    std::cout << hnn::format_report(doc);
  }
  if (!cfg.out.empty()) {
    std::ofstream out(cfg.out, std::ios::binary);
    if (!out || !(out << json)) {
      std::cerr << "hnn-forge: cannot write report to '" << cfg.out << "'\n";
      return hnn::kExitConfigError;
    }
  }
  return doc.pass() ? hnn::kExitPass : hnn::kExitCheckFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hnn-forge: numerical verification of HNN extensions of finite quantum groups"};
  app.require_subcommand(1);

  app.add_subcommand("list", "List builtin families with their dimensions");

  RunArgs args;
  auto* run = app.add_subcommand("run", "Run verification suites and emit a report");
  auto* cfg_opt = run->add_option("--config", args.config, "Configuration file")->check(CLI::ExistingFile);
  auto* bi_opt = run->add_option("--builtin", args.builtin, "Builtin family name");
  cfg_opt->excludes(bi_opt);
  run->add_option("--L", args.L, "Truncation length")->check(CLI::PositiveNumber);
  run->add_option("--suite", args.suites, "Suites to run (repeatable)")->expected(1, -1);
  run->add_option("--seed", args.seed, "Seed for randomized checks")->check(CLI::NonNegativeNumber);
  run->add_option("--dim-cap", args.dim_cap, "Maximal space dimension")->check(CLI::PositiveNumber);
  run->add_option("--out", args.out, "Write the JSON report here");
  run->add_flag("--json", args.json, "Print the JSON report instead of the table");
  run->add_flag("--no-timing", args.no_timing, "Leave timing out of the JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? hnn::kExitPass : hnn::kExitConfigError;
  }

  if (app.got_subcommand("list")) return cmd_list();
  if (args.config.empty() && args.builtin.empty()) {
    std::cerr << "hnn-forge: run needs --config or --builtin\n";
    return hnn::kExitConfigError;
  }
  return cmd_run(args);
}
