#include "zmc/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "zmc/errors.hpp"

namespace zmc {

bool VerificationReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.pass; });
}

std::size_t VerificationReport::passed() const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.pass; }));
}

std::string json_number(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (const unsigned char ch : s) {
    switch (ch) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\t':
        out += "\\t";
        break;
      case '\r':
        out += "\\r";
        break;
      default:
        if (ch < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", ch);
          out += buf;
        } else {
          out += static_cast<char>(ch);
        }
    }
  }
  return out + "\"";
}

namespace {

// Keys of a record in lexicographic order.
std::string record_json(const CheckRecord& c) {
  std::ostringstream os;
  os << "{\"measured\": " << json_number(c.measured) << ", \"module\": " << json_string(c.module)
     << ", \"n\": " << c.n << ", \"name\": " << json_string(c.name);
  if (!c.note.empty()) os << ", \"note\": " << json_string(c.note);
  os << ", \"parameters\": {";
  bool first = true;
  for (const auto& [k, v] : c.parameters) {
    if (!first) os << ", ";
    first = false;
    os << json_string(k) << ": " << json_number(v);
  }
  os << "}, \"pass\": " << (c.pass ? "true" : "false") << ", \"tolerance\": " << json_number(c.tolerance) << "}";
  return os.str();
}

}  // namespace

std::string report_to_json(const VerificationReport& r) {
  std::ostringstream os;
  os << "{\"checks\": [";
  for (std::size_t i = 0; i < r.checks.size(); ++i) {
    os << (i == 0 ? "\n  " : ",\n  ") << record_json(r.checks[i]);
  }
  if (!r.checks.empty()) os << "\n";
  os << "]";
  if (!r.suite.empty()) {
    os << ", \"metadata\": {";
    bool first = true;
    for (const auto& [k, v] : r.metadata) {
      if (!first) os << ", ";
      first = false;
      os << json_string(k) << ": " << json_string(v);
    }
    os << "}";
  }
  os << ", \"pass\": " << (r.pass() ? "true" : "false");
  if (!r.suite.empty()) {
    os << ", \"suite\": " << json_string(r.suite) << ", \"summary\": {\"failed\": " << r.failed()
       << ", \"passed\": " << r.passed() << ", \"total\": " << r.checks.size() << "}";
  }
  os << "}";
  return os.str();
}

void emit_report(const VerificationReport& report, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << report_to_json(report) << '\n';
  out.flush();
  if (!out) throw IoError("write failed for " + path);
}

}  // namespace zmc
