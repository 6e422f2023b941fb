#include <charconv>
#include <cstdio>
#include <iomanip>
#include <sstream>

#include "hermitlab/error.hpp"
#include "hermitlab_app/app.hpp"

namespace hermitlab::app {

using nlohmann::json;

namespace {

json point_json(const std::vector<Complex>& p) {
  json a = json::array();
  for (const auto& z : p) a.push_back({z.real(), z.imag()});
  return a;
}

json suite_json(const SuiteResult& s, const Report& r) {
  json checks = json::object();
  for (const auto& c : s.checks) {
    json j{{"comparison", c.comparison},
           {"value", c.value},
           {"tolerance", c.tolerance},
           {"passed", c.passed},
           {"worst_point", c.worst_point}};
    if (c.worst_point >= 0 && c.worst_point < static_cast<int>(r.points.size()) && s.name != "nilker")
      j["worst_coordinates"] = point_json(r.points[static_cast<std::size_t>(c.worst_point)]);
    if (!c.note.empty()) j["note"] = c.note;
    checks[c.name] = j;
  }
  return {{"passed", s.passed()}, {"checks", checks}, {"details", s.details}};
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

std::string shortest(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<const SuiteResult*> all_suites(const Report& r) {
  std::vector<const SuiteResult*> out;
  for (const auto& s : r.suites) out.push_back(&s);
  if (r.oracle) out.push_back(&*r.oracle);
  return out;
}

}  // namespace

json report_to_json(const Report& r) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["passed"] = r.passed();
  if (!r.timestamp.empty()) doc["timestamp"] = r.timestamp;
  doc["metric"] = metric_to_json(r.entry);
  doc["config"] = {{"metric_source", r.config.metric},
                   {"points", r.config.points},
                   {"seed", r.config.seed},
                   {"tolerance", r.config.tolerance},
                   {"tolerance_overrides", r.config.tolerances},
                   {"suites", r.config.suites},
                   {"oracle", r.config.oracle},
                   {"conformal_u", r.config.conformal_u},
                   {"conformal_branch", r.config.conformal_branch}};
  json pts = json::array();
  for (const auto& p : r.points) pts.push_back(point_json(p));
  doc["points"] = pts;
  doc["suites"] = json::object();
  for (const auto& s : r.suites) doc["suites"][s.name] = suite_json(s, r);
  if (r.oracle) doc["oracle"] = suite_json(*r.oracle, r);
  return doc;
}

std::string format_report(const Report& r, const std::string& format) {
  if (format == "json") return report_to_json(r).dump(2) + "\n";
  std::ostringstream out;
  if (format == "csv") {
    out << "suite,check,comparison,value,tolerance,worst_point,passed\n";
    for (const auto* s : all_suites(r))
      for (const auto& c : s->checks)
        out << s->name << ',' << csv_field(c.name) << ',' << c.comparison << ',' << shortest(c.value) << ','
            << shortest(c.tolerance) << ',' << c.worst_point << ',' << (c.passed ? "true" : "false") << '\n';
    return out.str();
  }
  if (format == "human") {
    out << "metric " << r.entry.metric.name << " (n = " << r.entry.metric.n << "), " << r.points.size()
        << " points, seed " << r.config.seed << "\n";
    for (const auto* s : all_suites(r)) {
      out << "\n[" << s->name << "] " << (s->passed() ? "pass" : "FAIL") << "\n";
      for (const auto& c : s->checks) {
        out << "  " << (c.passed ? "ok  " : "FAIL") << ' ' << std::left << std::setw(40) << c.name << std::right
            << num(c.value) << ' ' << c.comparison << ' ' << num(c.tolerance);
        if (!c.note.empty()) out << "  (" << c.note << ")";
        out << '\n';
      }
    }
    out << "\noverall: " << (r.passed() ? "pass" : "FAIL") << "\n";
    return out.str();
  }
  throw InvalidInput("unknown format '" + format + "'");
}

}  // namespace hermitlab::app
