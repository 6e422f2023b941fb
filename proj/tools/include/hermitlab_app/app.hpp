#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "hermitlab/catalog.hpp"

namespace hermitlab::app {

inline constexpr int kSchemaVersion = 1;

enum ExitCode { kExitPass = 0, kExitCheckFailed = 1, kExitUsage = 2, kExitDomain = 3 };

inline const std::vector<std::string> kSuiteNames = {"classify", "identities", "compare", "conformal", "nilker"};

/// Metric document: {name, n, entries[], constraints[], expected{}, region{center[[re,im]], radius}, note}.
/// Throws ParseError (byte offset into the document or into the failing entry),
/// InvalidInput for structural problems.
CatalogEntry metric_from_json_text(const std::string& text);
nlohmann::json metric_to_json(const CatalogEntry& entry);

/// Catalog name, "random_polynomial:SEED", or a path to a metric document.
CatalogEntry load_metric(const std::string& source);

/// Writes every catalog entry as <dir>/<name>.json; returns the paths written.
std::vector<std::filesystem::path> export_catalog(const std::filesystem::path& dir);

struct RunConfig {
  std::string metric = "euclidean";
  int points = 20;
  std::uint64_t seed = kDefaultSeed;
  double tolerance = 1e-7;                     // classification tolerance
  std::map<std::string, double> tolerances;    // per-check overrides, key "suite.check"
  std::vector<std::string> suites = kSuiteNames;
  std::string format = "json";
  bool oracle = false;
  std::string conformal_u = "re(z1)";
  std::string conformal_branch = "auto";       // auto | kahler_like | g_kahler_like
  bool timestamp = true;
};

/// Expands "all" and validates names. Throws InvalidInput.
std::vector<std::string> parse_suites(const std::vector<std::string>& names);

struct Check {
  std::string name;
  std::string comparison = "<";  // "<": value below tolerance; ">": value above tolerance
  double value = 0.0;
  double tolerance = 0.0;
  int worst_point = -1;  // index into the sampled points, -1 when not point-specific
  bool passed = true;
  std::string note;
};

struct SuiteResult {
  std::string name;
  std::vector<Check> checks;
  nlohmann::json details = nlohmann::json::object();
  std::string skipped;  // reason, empty when run
  bool passed() const;
};

struct Report {
  RunConfig config;
  CatalogEntry entry;
  std::vector<std::vector<Complex>> points;
  std::vector<SuiteResult> suites;
  std::optional<SuiteResult> oracle;
  std::string timestamp;
  bool passed() const;
};

/// Runs the selected suites. Domain errors (sampling exhaustion, degenerate
/// metric) propagate.
Report run(const RunConfig& config);

nlohmann::json report_to_json(const Report& report);
std::string format_report(const Report& report, const std::string& format);

}  // namespace hermitlab::app
