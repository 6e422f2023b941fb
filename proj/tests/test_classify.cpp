#include <doctest.h>

#include "hermitlab/catalog.hpp"
#include "hermitlab/chern.hpp"
#include "hermitlab/classify.hpp"
#include "hermitlab/error.hpp"
#include "support.hpp"

using namespace hermitlab;

TEST_CASE("catalog expectations on 50 points") {
  for (const auto& name : catalog_names()) {
    const auto e = catalog_get(name);
    const auto rep = classify_at(e.metric, sample_points(e.metric, e.region, 50));
    CHECK_MESSAGE(rep.consistent(), name);
    for (const auto& [flag, want] : e.expected) CHECK_MESSAGE(rep.flag(flag) == want, name << " " << flag);
  }
}

TEST_CASE("random polynomial metrics carry no special structure") {
  for (int s = 1; s <= 5; ++s) {
    const auto e = random_polynomial(static_cast<std::uint64_t>(s));
    CHECK(e.expected.empty());
    const auto rep = classify_at(e.metric, sample_points(e.metric, e.region, 10));
    CHECK(rep.consistent());
    for (const auto& [flag, r] : rep.flags) CHECK_MESSAGE(!r.value, "seed " << s << " " << flag);
  }
}

TEST_CASE("classification errors and worst points") {
  const auto e = catalog_get("iwasawa");
  CHECK_THROWS_AS(classify_at(e.metric, {}), InvalidInput);
  const auto pts = sample_points(e.metric, e.region, 8);
  const auto rep = classify_at(e.metric, pts);
  CHECK(rep.flags.size() == kFlagNames.size());
  CHECK(rep.flags.at("kahler").worst_point >= 0);
  CHECK(rep.flags.at("kahler").worst_point < 8);
  CHECK(rep.points.size() == 8);
}

TEST_CASE("scaling by a constant leaves the flags unchanged") {
  const auto e = catalog_get("gkl_surface");
  std::vector<std::string> scaled;
  for (const auto& x : e.metric.entries) scaled.push_back("3*(" + print(x) + ")");
  const auto m = MetricField::from_text("scaled", 2, scaled, {"im(z2) - 0.05"});
  const auto pts = sample_points(e.metric, e.region, 10);
  const auto a = classify_at(e.metric, pts), b = classify_at(m, pts);
  for (const auto& [flag, r] : a.flags) CHECK(r.value == b.flags.at(flag).value);
}

TEST_CASE("torsion-curvature identities on the sweep") {
  for (const auto& name : support::sweep_names(5)) {
    const auto e = catalog_get(name);
    for (const auto& p : sample_points(e.metric, e.region, 5)) {
      const auto a = analyze_point(e.metric, p);
      CHECK_MESSAGE(torsion_curvature_suite(a).max() < 1e-7, name);
    }
  }
  const auto fs = catalog_get("fubini_study_chart2");
  for (const auto& p : sample_points(fs.metric, fs.region, 5)) CHECK(riemann_hermitian_gap(analyze_point(fs.metric, p)) < 1e-8);
}

TEST_CASE("eta trace identity on G-Kahler-like metrics") {
  for (const auto& name : {"gkl_surface", "conformal_gklike"}) {
    const auto e = catalog_get(name);
    for (const auto& p : sample_points(e.metric, e.region, 10)) {
      const ChernData c = chern_at(e.metric, p);
      CHECK(eta_norm(c) > 1e-3);
      CHECK_MESSAGE(eta_trace_residual(c) < 1e-8 * (1 + curvature_norm(c)), name);
    }
  }
}

TEST_CASE("torsion identities: Kahler vanish, Iwasawa reported, random tensor violates") {
  const auto fs = catalog_get("fubini_study_chart2");
  for (const auto& p : sample_points(fs.metric, fs.region, 5)) CHECK(bothlike_suite(chern_at(fs.metric, p)).max() < 1e-12);

  const auto iw = catalog_get("iwasawa");
  const auto r = bothlike_suite(chern_at(iw.metric, sample_points(iw.metric, iw.region, 1)[0]));
  CHECK(r.torsion_scale > 1e-2);
  CHECK(std::isfinite(r.quadratic_first));

  // antisymmetric random T, zero derivatives
  std::mt19937_64 rng(5);
  std::normal_distribution<double> gauss;
  const int n = 3;
  CTensor T({n, n, n}), Z({n, n, n, n});
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        T(k, i, j) = Complex(gauss(rng), gauss(rng));
        T(k, j, i) = -T(k, i, j);
      }
  CHECK(bothlike_suite(T, Z, Z).quadratic_first > 1e-2);
}
