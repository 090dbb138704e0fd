#pragma once

#include <string>
#include <utility>
#include <vector>

namespace kinterp {

enum class Status { pass, fail, skip };

const char* status_name(Status s);

// One explicit-constant check: value against bound, with a reproducer.
struct Assertion {
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  bool pass = false;
  std::string reproducer;
};

struct WindowStat {
  std::string name;
  double min = 0.0;
  double median = 0.0;
  double max = 0.0;
  std::size_t count = 0;
  double drift = 0.0;  // relative endpoint change under refinement or extension
};

struct CaseRow {
  std::string id;
  std::vector<std::pair<std::string, double>> fields;
};

struct VerificationReport {
  std::string suite;
  std::string spec;  // settings that reproduce the run
  Status status = Status::skip;
  std::vector<Assertion> assertions;
  std::vector<WindowStat> windows;
  std::vector<CaseRow> cases;
  std::vector<std::string> notes;
  double runtime = 0.0;
  std::string timestamp;  // empty with --no-timestamp

  // PASS when every assertion passes; SKIP status is kept as set.
  void finish();
  std::size_t failures() const;
};

enum class Format { json, csv, text };

Format parse_format(const std::string& s);
std::string emit(const VerificationReport& r, Format f);
std::string emit(const std::vector<VerificationReport>& rs, Format f);
// Reads what emit(r, Format::json) wrote.
VerificationReport parse_report_json(const std::string& text);

// 6 significant digits, "inf" and "nan" spelled out.
std::string fmt6(double x);

}  // namespace kinterp
