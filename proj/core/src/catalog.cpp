#include "hermitlab/catalog.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <random>

#include "hermitlab/error.hpp"

namespace hermitlab {

namespace {

std::string num(double v) {
  std::array<char, 40> buf{};
  auto [p, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  (void)ec;
  return std::string(buf.data(), p);
}

std::string complex_text(Complex c) { return "(" + num(c.real()) + " + " + num(c.imag()) + "*i)"; }

CatalogEntry make(std::string name, int n, std::vector<std::string> entries, std::vector<std::string> constraints,
                  std::map<std::string, bool> expected, std::vector<Complex> center, std::string note) {
  CatalogEntry e;
  e.metric = MetricField::from_text(std::move(name), n, entries, constraints);
  e.expected = std::move(expected);
  e.region.center = std::move(center);
  e.region.radius = 1.0;
  e.note = std::move(note);
  return e;
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

std::vector<std::string> catalog_names() {
  return {"euclidean",    "fubini_study_chart", "fubini_study_chart2", "iwasawa",
          "gkl_surface",  "conformal_klike",    "conformal_gklike"};
}

CatalogEntry catalog_get(std::string_view name) {
  const std::map<std::string, bool> all_true{{"kahler", true},      {"balanced", true},
                                             {"kahler_like", true}, {"g_kahler_like", true},
                                             {"pluriclosed", true}, {"hermitian_flat", true}};
  if (name == "euclidean") {
    return make("euclidean", 2, {"1", "0", "0", "1"}, {}, all_true, {0.0, 0.0}, "flat metric on C^2");
  }
  if (name == "fubini_study_chart") {
    auto expected = all_true;
    expected["hermitian_flat"] = false;
    return make("fubini_study_chart", 1, {"(1 + abs2(z1))^-2"}, {}, expected, {0.0},
                "Fubini-Study metric of CP^1 in an affine chart; Kahler with curvature 2");
  }
  if (name == "fubini_study_chart2") {
    auto expected = all_true;
    expected["hermitian_flat"] = false;
    const std::string s = "(1 + abs2(z1) + abs2(z2))";
    return make("fubini_study_chart2", 2,
                {"(" + s + " - abs2(z1))/" + s + "^2", "-conj(z1)*z2/" + s + "^2",
                 "-z1*conj(z2)/" + s + "^2", "(" + s + " - abs2(z2))/" + s + "^2"},
                {}, expected, {0.0, 0.0}, "Fubini-Study metric of CP^2 in an affine chart");
  }
  if (name == "iwasawa") {
    return make("iwasawa", 3, {"1", "0", "0", "0", "1 + abs2(z1)", "-z1", "0", "-conj(z1)", "1"}, {},
                {{"kahler", false},
                 {"balanced", true},
                 {"kahler_like", true},
                 {"hermitian_flat", true},
                 {"g_kahler_like", false},
                 {"pluriclosed", false}},
                {0.0, 0.0, 0.0},
                "left-invariant metric on the complex Heisenberg group with unitary coframe dz1, dz2, dz3 - z1 dz2");
  }
  if (name == "gkl_surface") {
    return make("gkl_surface", 2, {"(-i*z2 + i*conj(z2))^2", "0", "0", "1"}, {"im(z2) - 0.05"},
                {{"g_kahler_like", true}, {"kahler", false}}, {0.0, {0.0, 1.2}},
                "metric on C x H with conformal factor (2 Im z2)^2 on dz1");
  }
  if (name == "conformal_klike") {
    return make("conformal_klike", 2, {"abs2(1 + z1)", "0", "0", "abs2(1 + z1)"}, {"abs2(1 + z1) - 0.0025"},
                {{"kahler_like", true}, {"kahler", false}}, {1.0, 0.0},
                "|f|^2 times the flat metric with f = 1 + z1 holomorphic and nonvanishing");
  }
  if (name == "conformal_gklike") {
    const std::string f = "(abs2(z1) + abs2(z2))^-2";
    return make("conformal_gklike", 2, {f, "0", "0", f}, {"abs2(z1) + abs2(z2) - 0.0025"},
                {{"g_kahler_like", true}, {"kahler", false}}, {1.5, 0.0},
                "|z|^-4 times the flat metric on C^2 minus the origin");
  }
  constexpr std::string_view prefix = "random_polynomial:";
  if (name.substr(0, prefix.size()) == prefix) {
    std::uint64_t seed = 0;
    const auto rest = name.substr(prefix.size());
    auto [p, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), seed);
    if (ec != std::errc() || p != rest.data() + rest.size()) {
      throw InvalidInput("bad random_polynomial seed in '" + std::string(name) + "'");
    }
    return random_polynomial(seed);
  }
  throw InvalidInput("unknown catalog metric '" + std::string(name) + "'");
}

CatalogEntry random_polynomial(std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x9E3779B97F4A7C15ULL);
  const int n = 2 + static_cast<int>(seed % 2);
  std::normal_distribution<double> normal(0.0, 1.0);

  // variables w_0..w_{2n-1} = z_1..z_n, conj(z_1)..conj(z_n)
  auto var = [n](int a) {
    return a < n ? "z" + std::to_string(a + 1) : "conj(z" + std::to_string(a - n + 1) + ")";
  };
  struct Term {
    Complex c;
    std::string mono;
  };
  std::vector<std::string> monos{""};
  for (int a = 0; a < 2 * n; ++a) monos.push_back(var(a));
  for (int a = 0; a < 2 * n; ++a)
    for (int b = a; b < 2 * n; ++b) monos.push_back(var(a) + "*" + var(b));

  std::vector<std::vector<std::vector<Term>>> poly(static_cast<std::size_t>(n),
                                                   std::vector<std::vector<Term>>(static_cast<std::size_t>(n)));
  std::vector<double> row(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      auto& terms = poly[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      for (int t = 0; t < 6; ++t) {
        const auto pick = static_cast<std::size_t>(rng() % monos.size());
        terms.push_back({{normal(rng), normal(rng)}, monos[pick]});
      }
      double bound = 0.0;
      for (const auto& t : terms) bound += std::abs(t.c);
      row[static_cast<std::size_t>(i)] += bound;
      if (j != i) row[static_cast<std::size_t>(j)] += bound;
    }
  double worst = 0.0;
  for (double r : row) worst = std::max(worst, r);
  const double eps = 0.6 / worst;

  auto text = [&](const std::vector<Term>& terms) {
    std::string s;
    for (const auto& t : terms) {
      const Complex c{std::round(t.c.real() * eps * 1e6) / 1e6, std::round(t.c.imag() * eps * 1e6) / 1e6};
      if (!s.empty()) s += " + ";
      s += complex_text(c);
      if (!t.mono.empty()) s += "*" + t.mono;
    }
    return s;
  };
  std::vector<std::string> entries(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const std::string p = text(poly[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
      if (i == j) {
        entries[static_cast<std::size_t>(i * n + i)] = "1 + re(" + p + ")";
      } else {
        entries[static_cast<std::size_t>(i * n + j)] = p;
        entries[static_cast<std::size_t>(j * n + i)] = "conj(" + p + ")";
      }
    }
  CatalogEntry e;
  e.metric = MetricField::from_text("random_polynomial:" + std::to_string(seed), n, entries, {});
  e.region.center.assign(static_cast<std::size_t>(n), Complex{});
  e.region.radius = 1.0;
  e.note = "identity plus a degree-2 Hermitian polynomial perturbation, Gershgorin-bounded on the unit polydisc";
  return e;
}

std::vector<std::vector<Complex>> sample_points(const MetricField& metric, const SampleRegion& region, int count,
                                                std::uint64_t seed) {
  if (count < 1) throw InvalidInput("point count must be at least 1");
  if (static_cast<int>(region.center.size()) != metric.n) {
    throw InvalidInput("sample region dimension does not match metric '" + metric.name + "'");
  }
  std::mt19937_64 rng(seed);
  std::vector<std::vector<Complex>> out;
  const long budget = 10L * count;
  for (long attempt = 0; attempt < budget && static_cast<int>(out.size()) < count; ++attempt) {
    std::vector<Complex> p(static_cast<std::size_t>(metric.n));
    for (int k = 0; k < metric.n; ++k) {
      const double r = region.radius * std::sqrt(uniform01(rng));
      const double a = 2.0 * M_PI * uniform01(rng);
      p[static_cast<std::size_t>(k)] = region.center[static_cast<std::size_t>(k)] + std::polar(r, a);
    }
    if (metric.admits(p)) out.push_back(std::move(p));
  }
  if (static_cast<int>(out.size()) < count) {
    throw DomainError("could not find " + std::to_string(count) + " admissible points for '" + metric.name +
                      "' within 10x oversampling");
  }
  return out;
}

}  // namespace hermitlab
