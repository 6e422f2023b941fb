#include <fstream>
#include <sstream>

#include "hermitlab/error.hpp"
#include "hermitlab_app/app.hpp"

namespace hermitlab::app {

using nlohmann::json;

namespace {

// Byte offset of a string value inside the raw document (first occurrence).
std::size_t locate(const std::string& text, const std::string& value, std::size_t from) {
  const std::string quoted = json(value).dump();
  const auto pos = text.find(quoted, from);
  return pos == std::string::npos ? 0 : pos + 1;
}

std::vector<std::string> string_array(const json& doc, const char* key, bool required) {
  if (!doc.contains(key)) {
    if (required) throw InvalidInput(std::string("metric document lacks '") + key + "'");
    return {};
  }
  const json& a = doc.at(key);
  if (!a.is_array()) throw InvalidInput(std::string("'") + key + "' must be an array of strings");
  std::vector<std::string> out;
  for (const auto& v : a) {
    if (!v.is_string()) throw InvalidInput(std::string("'") + key + "' must be an array of strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

Complex complex_from(const json& v) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return {v[0].get<double>(), v[1].get<double>()};
  throw InvalidInput("complex numbers are written as [re, im]");
}

}  // namespace

CatalogEntry metric_from_json_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("malformed metric document", e.byte > 0 ? e.byte - 1 : 0);
  }
  if (!doc.is_object()) throw InvalidInput("metric document must be a JSON object");
  if (!doc.contains("n") || !doc.at("n").is_number_integer()) throw InvalidInput("metric document needs integer 'n'");
  const int n = doc.at("n").get<int>();
  if (n < 1 || n > 8) throw InvalidInput("metric dimension must lie in 1..8");
  const std::string name = doc.value("name", std::string("unnamed"));
  const auto entries = string_array(doc, "entries", true);
  const auto constraints = string_array(doc, "constraints", false);

  CatalogEntry e;
  try {
    e.metric = MetricField::from_text(name, n, entries, constraints);
  } catch (const ParseError& err) {
    // map the entry-relative offset onto the document
    std::size_t base = 0;
    std::size_t from = text.find("\"entries\"");
    for (const auto& src : entries) {
      const std::size_t at = locate(text, src, from == std::string::npos ? 0 : from);
      try {
        (void)parse(src, n);
      } catch (const ParseError&) {
        base = at;
        break;
      }
      from = at;
    }
    if (base == 0) {
      from = text.find("\"constraints\"");
      for (const auto& src : constraints) {
        const std::size_t at = locate(text, src, from == std::string::npos ? 0 : from);
        try {
          (void)parse(src, n);
        } catch (const ParseError&) {
          base = at;
          break;
        }
        from = at;
      }
    }
    throw ParseError(err.message(), base + err.offset(), err.expected());
  }
  if (doc.contains("expected")) {
    const json& ex = doc.at("expected");
    if (!ex.is_object()) throw InvalidInput("'expected' must map flag names to booleans");
    for (const auto& [k, v] : ex.items()) {
      if (!v.is_boolean()) throw InvalidInput("expected flag '" + k + "' must be boolean");
      e.expected[k] = v.get<bool>();
    }
  }
  e.region.center.assign(static_cast<std::size_t>(n), Complex{});
  e.region.radius = 1.0;
  if (doc.contains("region")) {
    const json& r = doc.at("region");
    if (r.contains("center")) {
      const json& c = r.at("center");
      if (!c.is_array() || c.size() != static_cast<std::size_t>(n))
        throw InvalidInput("region.center needs one entry per coordinate");
      for (std::size_t k = 0; k < c.size(); ++k) e.region.center[k] = complex_from(c[k]);
    }
    if (r.contains("radius")) {
      e.region.radius = r.at("radius").get<double>();
      if (!(e.region.radius > 0.0)) throw InvalidInput("region.radius must be positive");
    }
  }
  e.note = doc.value("note", std::string());
  return e;
}

json metric_to_json(const CatalogEntry& entry) {
  json doc;
  doc["name"] = entry.metric.name;
  doc["n"] = entry.metric.n;
  doc["entries"] = json::array();
  for (const auto& x : entry.metric.entries) doc["entries"].push_back(print(x));
  doc["constraints"] = json::array();
  for (const auto& x : entry.metric.constraints) doc["constraints"].push_back(print(x));
  doc["expected"] = json::object();
  for (const auto& [k, v] : entry.expected) doc["expected"][k] = v;
  json center = json::array();
  for (const auto& c : entry.region.center) center.push_back({c.real(), c.imag()});
  doc["region"] = {{"center", center}, {"radius", entry.region.radius}};
  doc["note"] = entry.note;
  return doc;
}

CatalogEntry load_metric(const std::string& source) {
  const auto names = catalog_names();
  if (std::find(names.begin(), names.end(), source) != names.end() || source.rfind("random_polynomial:", 0) == 0)
    return catalog_get(source);
  std::ifstream in(source, std::ios::binary);
  if (!in) throw InvalidInput("'" + source + "' is neither a catalog metric nor a readable file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return metric_from_json_text(ss.str());
}

std::vector<std::filesystem::path> export_catalog(const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> out;
  for (const auto& name : catalog_names()) {
    const auto path = dir / (name + ".json");
    std::ofstream f(path, std::ios::binary);
    f << metric_to_json(catalog_get(name)).dump(2) << '\n';
    if (!f) throw Error("cannot write " + path.string());
    out.push_back(path);
  }
  return out;
}

}  // namespace hermitlab::app
