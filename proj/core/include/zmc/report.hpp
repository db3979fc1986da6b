#pragma once

#include <map>
#include <string>
#include <vector>

// Structured verification records and their JSON form.

namespace zmc {

struct CheckRecord {
  std::string name;
  std::string module;
  int n = 0;  // 0 when the check is not tied to a single n
  std::map<std::string, double> parameters;
  double measured = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string note;  // empty fields are omitted from JSON
};

struct VerificationReport {
  std::string suite;  // empty: no suite/summary/metadata keys are written
  std::map<std::string, std::string> metadata;
  std::vector<CheckRecord> checks;

  bool pass() const;
  std::size_t passed() const;
  std::size_t failed() const { return checks.size() - passed(); }
};

// Stable key order, 17 significant digits, null for non-finite numbers.
// An empty report renders as {"checks": [], "pass": true}.
std::string report_to_json(const VerificationReport& report);

// Writes report_to_json plus a trailing newline. Throws IoError with the path.
void emit_report(const VerificationReport& report, const std::string& path);

// JSON helpers shared with other writers.
std::string json_number(double v);
std::string json_string(const std::string& s);

}  // namespace zmc
