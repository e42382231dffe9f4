#include "hnn/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace hnn {

nlohmann::json CheckResult::to_json() const {
  nlohmann::json j{{"name", name}, {"threshold", threshold}, {"mask", mask}, {"pass", pass}};
  if (std::isfinite(residual))
    j["residual"] = residual;
  else
    j["residual"] = std::isnan(residual) ? "nan" : "inf";
  return j;
}

const CheckResult& CheckReport::add(std::string name, double residual, double threshold, std::string mask) {
  CheckResult c{std::move(name), residual, threshold, std::move(mask), residual <= threshold};
  checks_.push_back(std::move(c));
  return checks_.back();
}

void CheckReport::merge(const CheckReport& other) {
  checks_.insert(checks_.end(), other.checks_.begin(), other.checks_.end());
  notes_.insert(notes_.end(), other.notes_.begin(), other.notes_.end());
}

void CheckReport::fail(std::string name, const std::string& reason) {
  add(std::move(name), std::nan(""), 0.0, "n/a");
  note(reason);
}

const CheckResult* CheckReport::find(const std::string& name) const {
  auto it = std::find_if(checks_.begin(), checks_.end(), [&](const CheckResult& c) { return c.name == name; });
  return it == checks_.end() ? nullptr : &*it;
}

bool CheckReport::pass() const { return failures() == 0; }

int CheckReport::failures() const {
  return static_cast<int>(std::count_if(checks_.begin(), checks_.end(), [](const CheckResult& c) { return !c.pass; }));
}

nlohmann::json CheckReport::to_json() const {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : checks_) checks.push_back(c.to_json());
  return {{"suite", suite_}, {"pass", pass()}, {"checks", checks}, {"notes", notes_}};
}

bool ReportDocument::pass() const {
  return std::all_of(suites.begin(), suites.end(), [](const CheckReport& r) { return r.pass(); });
}

nlohmann::json ReportDocument::to_json(bool with_timing) const {
  nlohmann::json s = nlohmann::json::array();
  for (const auto& r : suites) s.push_back(r.to_json());
  nlohmann::json j{{"config", config}, {"summary", summary}, {"suites", s}, {"pass", pass()}};
  if (with_timing) j["timing_seconds"] = timing_seconds;
  return j;
}

std::string format_report(const ReportDocument& doc) {
  std::ostringstream os;
  char line[512];
  for (const auto& r : doc.suites) {
    os << "[" << r.suite() << "] " << (r.pass() ? "pass" : "FAIL") << "\n";
    for (const auto& c : r.checks()) {
      std::snprintf(line, sizeof line, "  %-4s %-58s %10.3e <= %8.1e  (%s)\n", c.pass ? "ok" : "FAIL", c.name.c_str(),
                    c.residual, c.threshold, c.mask.c_str());
      os << line;
    }
    for (const auto& n : r.notes()) os << "  note: " << n << "\n";
  }
  os << "overall: " << (doc.pass() ? "pass" : "FAIL") << "\n";
  return os.str();
}

}  // namespace hnn
