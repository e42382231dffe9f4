#pragma once

// Check records and the run report. A check passes iff residual <= threshold;
// a NaN residual never passes.

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace hnn {

struct CheckResult {
  std::string name;
  double residual = 0.0;
  double threshold = 0.0;
  std::string mask;
  bool pass = false;

  nlohmann::json to_json() const;
};

class CheckReport {
 public:
  explicit CheckReport(std::string suite = {}) : suite_(std::move(suite)) {}

  const CheckResult& add(std::string name, double residual, double threshold, std::string mask = "full");
  void note(std::string text) { notes_.push_back(std::move(text)); }
  void merge(const CheckReport& other);
  // Records a failed check for an exception raised while the suite ran.
  void fail(std::string name, const std::string& reason);

  const std::string& suite() const noexcept { return suite_; }
  const std::vector<CheckResult>& checks() const noexcept { return checks_; }
  const std::vector<std::string>& notes() const noexcept { return notes_; }
  const CheckResult* find(const std::string& name) const;
  bool pass() const;
  int failures() const;

  nlohmann::json to_json() const;

 private:
  std::string suite_;
  std::vector<CheckResult> checks_;
  std::vector<std::string> notes_;
};

struct ReportDocument {
  nlohmann::json config;
  nlohmann::json summary;  // family and space dimensions
  std::vector<CheckReport> suites;
  std::map<std::string, double> timing_seconds;

  bool pass() const;
  nlohmann::json to_json(bool with_timing = true) const;
};

// Human-readable check table, one line per check.
std::string format_report(const ReportDocument& doc);

}  // namespace hnn
