#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "hermitlab/error.hpp"
#include "hermitlab_app/app.hpp"

using namespace hermitlab;
using nlohmann::json;

#ifndef HERMITLAB_SOURCE_DIR
#error "HERMITLAB_SOURCE_DIR must be defined"
#endif

namespace {

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

app::RunConfig config(const std::string& metric, std::vector<std::string> suites, int points = 5) {
  app::RunConfig c;
  c.metric = metric;
  c.suites = std::move(suites);
  c.points = points;
  c.timestamp = false;
  return c;
}

}  // namespace

TEST_CASE("metric documents round-trip") {
  for (const auto& name : catalog_names()) {
    const auto e = catalog_get(name);
    const auto back = app::metric_from_json_text(app::metric_to_json(e).dump());
    CHECK(back.metric.name == e.metric.name);
    CHECK(back.metric.n == e.metric.n);
    CHECK(back.expected == e.expected);
    REQUIRE(back.metric.entries.size() == e.metric.entries.size());
    for (std::size_t k = 0; k < e.metric.entries.size(); ++k) CHECK(back.metric.entries[k] == e.metric.entries[k]);
    CHECK(back.region.center == e.region.center);
  }
}

TEST_CASE("committed catalog files match the export") {
  const std::filesystem::path dir = std::filesystem::path(HERMITLAB_SOURCE_DIR) / "data" / "catalog";
  for (const auto& name : catalog_names()) {
    const auto path = dir / (name + ".json");
    REQUIRE_MESSAGE(std::filesystem::exists(path), path.string());
    CHECK(json::parse(read_file(path)) == app::metric_to_json(catalog_get(name)));
    CHECK(app::load_metric(path.string()).metric.entries.size() == catalog_get(name).metric.entries.size());
  }
}

TEST_CASE("metric document errors") {
  auto offset = [](const std::string& text) -> std::size_t {
    try {
      (void)app::metric_from_json_text(text);
    } catch (const ParseError& e) {
      return e.offset();
    }
    return std::string::npos;
  };
  const std::string doc = R"({"name": "x", "n": 1, "entries": ["1 + * z1"]})";
  CHECK(offset(doc) == doc.find("* z1"));
  CHECK(offset(R"({"n": 1, "entries": [)") != std::string::npos);
  const std::string cons = R"({"n": 1, "entries": ["1"], "constraints": ["re(z1"]})";
  CHECK(offset(cons) == cons.size() - 3);
  CHECK_THROWS_AS(app::metric_from_json_text(R"({"n": 2, "entries": ["1"]})"), InvalidInput);
  CHECK_THROWS_AS(app::metric_from_json_text(R"({"entries": ["1"]})"), InvalidInput);
  CHECK_THROWS_AS(app::metric_from_json_text(R"([1, 2])"), InvalidInput);
  CHECK_THROWS_AS(app::metric_from_json_text(R"({"n": 1, "entries": ["1"], "expected": {"kahler": 1}})"), InvalidInput);
  CHECK_THROWS_AS(app::load_metric("no_such_metric"), InvalidInput);
}

TEST_CASE("suite names") {
  CHECK(app::parse_suites({"all"}) == app::kSuiteNames);
  CHECK(app::parse_suites({"nilker", "classify", "classify"}) == std::vector<std::string>{"classify", "nilker"});
  CHECK_THROWS_AS(app::parse_suites({"bogus"}), InvalidInput);
}

TEST_CASE("Euclidean run passes everything with tiny residuals") {
  auto c = config("euclidean", {"all"});
  c.oracle = true;
  const auto rep = app::run(c);
  CHECK(rep.passed());
  CHECK(rep.suites.size() == app::kSuiteNames.size());
  for (const auto& s : rep.suites) {
    if (s.name == "nilker") continue;  // random fixtures, metric-independent
    for (const auto& ch : s.checks)
      if (ch.comparison == "<") CHECK_MESSAGE(ch.value < 1e-9, s.name << "." << ch.name);
  }
}

TEST_CASE("Iwasawa classification report") {
  const auto rep = app::run(config("iwasawa", {"classify"}, 10));
  REQUIRE(rep.suites.size() == 1);
  CHECK(rep.suites[0].passed());
  const json j = app::report_to_json(rep);
  CHECK(j.at("schema_version") == app::kSchemaVersion);
  CHECK(j.at("suites").at("classify").at("details").at("flags").at("kahler_like").at("value") == true);
  CHECK(j.at("suites").at("classify").at("details").at("flags").at("kahler").at("value") == false);
  CHECK(!j.contains("timestamp"));
}

TEST_CASE("failed expectations fail the run") {
  const std::filesystem::path tmp = std::filesystem::temp_directory_path() / "hermitlab_wrong_expectation.json";
  {
    std::ofstream f(tmp);
    f << R"({"name": "flat", "n": 2, "entries": ["1", "0", "0", "1"], "expected": {"kahler": false}})";
  }
  const auto rep = app::run(config(tmp.string(), {"classify"}, 3));
  CHECK(!rep.passed());
  std::filesystem::remove(tmp);
}

TEST_CASE("reports are deterministic apart from the timestamp") {
  auto c = config("random_polynomial:3", {"classify", "compare", "nilker"}, 4);
  c.timestamp = true;
  json a = app::report_to_json(app::run(c)), b = app::report_to_json(app::run(c));
  CHECK(a.contains("timestamp"));
  a.erase("timestamp");
  b.erase("timestamp");
  CHECK(a.dump() == b.dump());
  c.seed = 99;
  json d = app::report_to_json(app::run(c));
  d.erase("timestamp");
  CHECK(d.dump() != a.dump());
}

TEST_CASE("formats") {
  const auto rep = app::run(config("euclidean", {"classify"}, 2));
  CHECK(app::format_report(rep, "csv").rfind("suite,check,comparison,value,tolerance,worst_point,passed\n", 0) == 0);
  CHECK(app::format_report(rep, "human").find("overall: pass") != std::string::npos);
  CHECK(json::parse(app::format_report(rep, "json")).at("passed") == true);
  CHECK_THROWS_AS(app::format_report(rep, "xml"), InvalidInput);
}

TEST_CASE("run errors") {
  CHECK_THROWS_AS(app::run(config("euclidean", {"classify"}, 0)), InvalidInput);
  const std::filesystem::path tmp = std::filesystem::temp_directory_path() / "hermitlab_empty_domain.json";
  {
    std::ofstream f(tmp);
    f << R"({"name": "empty", "n": 1, "entries": ["1"], "constraints": ["-1"]})";
  }
  CHECK_THROWS_AS(app::run(config(tmp.string(), {"classify"}, 3)), DomainError);
  std::filesystem::remove(tmp);
  auto c = config("gkl_surface", {"conformal"}, 3);
  c.conformal_u = "z1";
  CHECK_THROWS_AS(app::run(c), InvalidInput);
  c.conformal_u = "re(z1";
  CHECK_THROWS_AS(app::run(c), ParseError);
}

TEST_CASE("tolerance overrides") {
  auto c = config("iwasawa", {"compare"}, 2);
  c.tolerances["compare.ricci_linear"] = 1e-30;
  const auto rep = app::run(c);
  bool found = false;
  for (const auto& ch : rep.suites[0].checks)
    if (ch.name == "ricci_linear") {
      found = true;
      CHECK(ch.tolerance == 1e-30);
    }
  CHECK(found);
}
