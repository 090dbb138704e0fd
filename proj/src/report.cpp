#include "kinterp/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "kinterp/grid.hpp"

namespace kinterp {

using nlohmann::ordered_json;

const char* status_name(Status s) {
  switch (s) {
    case Status::pass: return "PASS";
    case Status::fail: return "FAIL";
    case Status::skip: return "SKIP";
  }
  return "?";
}

void VerificationReport::finish() {
  if (status == Status::skip && assertions.empty()) return;
  status = failures() == 0 ? Status::pass : Status::fail;
}

std::size_t VerificationReport::failures() const {
  return static_cast<std::size_t>(std::count_if(assertions.begin(), assertions.end(), [](const Assertion& a) { return !a.pass; }));
}

Format parse_format(const std::string& s) {
  if (s == "json") return Format::json;
  if (s == "csv") return Format::csv;
  if (s == "text" || s == "text-table") return Format::text;
  fail(ErrorCode::usage, "unknown format '" + s + "'");
}

std::string fmt6(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

namespace {

// Numbers go through fmt6 so that json, csv and text agree digit for digit.
ordered_json num(double x) {
  if (!std::isfinite(x)) return fmt6(x);
  return ordered_json::parse(fmt6(x));
}

double unnum(const ordered_json& j) {
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s == "inf") return kInf;
    if (s == "-inf") return -kInf;
    return std::nan("");
  }
  return j.get<double>();
}

ordered_json to_json(const VerificationReport& r) {
  ordered_json j;
  j["suite"] = r.suite;
  j["status"] = status_name(r.status);
  j["spec"] = r.spec;
  j["runtime_s"] = num(r.runtime);
  if (!r.timestamp.empty()) j["timestamp"] = r.timestamp;
  j["assertions"] = ordered_json::array();
  for (const auto& a : r.assertions)
    j["assertions"].push_back(
        {{"name", a.name}, {"value", num(a.value)}, {"bound", num(a.bound)}, {"pass", a.pass}, {"reproducer", a.reproducer}});
  j["windows"] = ordered_json::array();
  for (const auto& w : r.windows)
    j["windows"].push_back({{"name", w.name},
                            {"min", num(w.min)},
                            {"median", num(w.median)},
                            {"max", num(w.max)},
                            {"count", w.count},
                            {"drift", num(w.drift)}});
  j["cases"] = ordered_json::array();
  for (const auto& c : r.cases) {
    ordered_json f = ordered_json::object();
    for (const auto& [k, v] : c.fields) f[k] = num(v);
    j["cases"].push_back({{"id", c.id}, {"fields", f}});
  }
  j["notes"] = r.notes;
  return j;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void emit_csv(std::ostringstream& os, const VerificationReport& r, bool header) {
  // One row per case; assertions and windows become rows of their own kind.
  if (header) os << "suite,kind,id,field,value\n";
  for (const auto& a : r.assertions) {
    os << r.suite << ",assertion," << csv_escape(a.name) << ",value," << fmt6(a.value) << '\n';
    os << r.suite << ",assertion," << csv_escape(a.name) << ",bound," << fmt6(a.bound) << '\n';
    os << r.suite << ",assertion," << csv_escape(a.name) << ",pass," << (a.pass ? 1 : 0) << '\n';
  }
  for (const auto& w : r.windows)
    os << r.suite << ",window," << csv_escape(w.name) << ",min;median;max;drift," << fmt6(w.min) << ';' << fmt6(w.median)
       << ';' << fmt6(w.max) << ';' << fmt6(w.drift) << '\n';
  for (const auto& c : r.cases) {
    os << r.suite << ",case," << csv_escape(c.id) << ',';
    for (std::size_t i = 0; i < c.fields.size(); ++i) os << (i ? ";" : "") << c.fields[i].first;
    os << ',';
    for (std::size_t i = 0; i < c.fields.size(); ++i) os << (i ? ";" : "") << fmt6(c.fields[i].second);
    os << '\n';
  }
}

void emit_text(std::ostringstream& os, const VerificationReport& r) {
  char line[256];
  std::snprintf(line, sizeof line, "suite %-8s %s  (%s s)\n", r.suite.c_str(), status_name(r.status), fmt6(r.runtime).c_str());
  os << line;
  if (!r.spec.empty()) os << "  spec: " << r.spec << '\n';
  if (!r.timestamp.empty()) os << "  at:   " << r.timestamp << '\n';
  for (const auto& a : r.assertions) {
    std::snprintf(line, sizeof line, "  %-4s %-52s %14s <= %-14s\n", a.pass ? "ok" : "FAIL", a.name.c_str(),
                  fmt6(a.value).c_str(), fmt6(a.bound).c_str());
    os << line;
    if (!a.pass && !a.reproducer.empty()) os << "       reproduce: " << a.reproducer << '\n';
  }
  if (!r.windows.empty()) {
    std::snprintf(line, sizeof line, "  %-40s %12s %12s %12s %6s %12s\n", "window", "min", "median", "max", "n", "drift");
    os << line;
    for (const auto& w : r.windows) {
      std::snprintf(line, sizeof line, "  %-40s %12s %12s %12s %6zu %12s\n", w.name.c_str(), fmt6(w.min).c_str(),
                    fmt6(w.median).c_str(), fmt6(w.max).c_str(), w.count, fmt6(w.drift).c_str());
      os << line;
    }
  }
  for (const auto& n : r.notes) os << "  note: " << n << '\n';
}

}  // namespace

std::string emit(const VerificationReport& r, Format f) { return emit(std::vector<VerificationReport>{r}, f); }

std::string emit(const std::vector<VerificationReport>& rs, Format f) {
  std::ostringstream os;
  switch (f) {
    case Format::json: {
      if (rs.size() == 1) return to_json(rs[0]).dump(2) + "\n";
      ordered_json arr = ordered_json::array();
      for (const auto& r : rs) arr.push_back(to_json(r));
      return arr.dump(2) + "\n";
    }
    case Format::csv:
      for (std::size_t i = 0; i < rs.size(); ++i) emit_csv(os, rs[i], i == 0);
      break;
    case Format::text:
      for (const auto& r : rs) emit_text(os, r);
      break;
  }
  return os.str();
}

VerificationReport parse_report_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    fail(ErrorCode::argument, std::string("report is not valid json: ") + e.what());
  }
  VerificationReport r;
  r.suite = j.at("suite").get<std::string>();
  std::string st = j.at("status").get<std::string>();
  r.status = st == "PASS" ? Status::pass : st == "FAIL" ? Status::fail : Status::skip;
  r.spec = j.value("spec", "");
  r.runtime = unnum(j.at("runtime_s"));
  r.timestamp = j.value("timestamp", "");
  for (const auto& a : j.at("assertions"))
    r.assertions.push_back({a.at("name").get<std::string>(), unnum(a.at("value")), unnum(a.at("bound")),
                            a.at("pass").get<bool>(), a.value("reproducer", "")});
  for (const auto& w : j.at("windows"))
    r.windows.push_back({w.at("name").get<std::string>(), unnum(w.at("min")), unnum(w.at("median")), unnum(w.at("max")),
                         w.at("count").get<std::size_t>(), unnum(w.at("drift"))});
  for (const auto& c : j.at("cases")) {
    CaseRow row{c.at("id").get<std::string>(), {}};
    for (const auto& [k, v] : c.at("fields").items()) row.fields.emplace_back(k, unnum(v));
    r.cases.push_back(std::move(row));
  }
  for (const auto& n : j.at("notes")) r.notes.push_back(n.get<std::string>());
  return r;
}

}  // namespace kinterp
