#include <doctest.h>

#include "hermitlab/catalog.hpp"
#include "hermitlab/chern.hpp"
#include "hermitlab/classify.hpp"
#include "hermitlab/levicivita.hpp"
#include "support.hpp"

using namespace hermitlab;

TEST_CASE("Euclidean Riemann data vanish") {
  const auto e = catalog_get("euclidean");
  const RiemannData r = riemann_at(e.metric, support::Point{{0.2, 0.1}, {0.3, -0.3}});
  CHECK(max_abs(r.Rreal) == 0.0);
  CHECK(max_abs(r.R) == 0.0);
  CHECK(theta2_norm(r) == 0.0);
}

TEST_CASE("Gauss curvature of the Fubini-Study chart") {
  // real metric 2 g (dx^2 + dy^2), K = -Lap(log(2g)) / (2 * 2g) computed independently by finite differences
  const auto e = catalog_get("fubini_study_chart");
  std::mt19937_64 rng(11);
  for (int t = 0; t < 5; ++t) {
    const auto p = support::random_point(rng, 1, 1.0);
    const RiemannData r = riemann_at(e.metric, p);
    const support::Scalar lam = [&](const support::Point& q) { return std::log(2.0 * e.metric.entry(0, 0).eval_value(q)); };
    const double lap = 4.0 * support::wirtinger_fd2(lam, p, 0, 1).real();
    const double K_fd = -lap / (2.0 * 2.0 * e.metric.entry(0, 0).eval_value(p).real());
    // K = -R(x, y, x, y) / |x ^ y|^2 in this sign convention
    const Complex h00 = r.h(0, 0).value(), h11 = r.h(1, 1).value(), h01 = r.h(0, 1).value();
    const double area = (h00 * h11 - h01 * h01).real();
    const double K = -r.Rreal(0, 1, 0, 1).real() / area;
    CHECK(std::abs(K - K_fd) < 1e-5);
    CHECK(std::abs(K - 2.0) < 1e-10);
    // Kahler: R = R^h
    const ChernData c = chern_at(e.metric, p);
    CHECK(std::abs(r.R(0, 1, 0, 1) - c.Rh(0, 0, 0, 0)) < 1e-8);
  }
}

TEST_CASE("Riemann symmetries and Gray vanishing on the sweep") {
  for (const auto& name : support::sweep_names(5)) {
    const auto e = catalog_get(name);
    for (const auto& p : sample_points(e.metric, e.region, 5)) {
      const RiemannData r = riemann_at(e.metric, p);
      const double s = 1.0 + max_abs(r.R);
      const RiemannSymmetry sym = riemann_symmetries(r);
      CHECK_MESSAGE(sym.antisym_first < 1e-10 * s, name);
      CHECK_MESSAGE(sym.antisym_last < 1e-10 * s, name);
      CHECK_MESSAGE(sym.pair_swap < 1e-10 * s, name);
      CHECK_MESSAGE(sym.bianchi < 1e-10 * s, name);
      CHECK_MESSAGE(gray_vanishing(r) < 1e-8, name);
    }
  }
}

TEST_CASE("Christoffel symbols against finite differences of h") {
  const auto e = catalog_get("random_polynomial:3");
  const auto p = sample_points(e.metric, e.region, 1)[0];
  const RiemannData r = riemann_at(e.metric, p);
  const int N = 2 * e.metric.n;
  // real coordinate derivative of h_{bc} along x_d: d/dx = d/dz + d/dzbar, d/dy = i (d/dz - d/dzbar)
  auto dh = [&](int d, int b, int c) {
    const int k = d / 2, n = e.metric.n;
    const Jet& hj = r.h(b, c);
    return d % 2 == 0 ? hj.d1(k) + hj.d1(n + k) : Complex(0, 1) * (hj.d1(k) - hj.d1(n + k));
  };
  Eigen::MatrixXcd hv(N, N);
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) hv(a, b) = r.h(a, b).value();
  const Eigen::MatrixXcd hi = hv.inverse();
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b)
      for (int c = 0; c < N; ++c) {
        Complex s{};
        for (int d = 0; d < N; ++d) s += 0.5 * hi(a, d) * (dh(b, d, c) + dh(c, d, b) - dh(d, b, c));
        CHECK(std::abs(r.Gamma(a, b, c).value() - s) < 1e-12);
      }
}

TEST_CASE("surface example is G-Kahler-like") {
  const auto e = catalog_get("gkl_surface");
  SampleRegion region{{0.0, {0.0, 1.3}}, 1.0};
  for (const auto& p : sample_points(e.metric, region, 50)) {
    if (p[1].imag() <= 0.1) continue;
    CHECK(theta2_norm(riemann_at(e.metric, p)) < 1e-9);
  }
}

TEST_CASE("two routes for theta2, gamma and Theta2") {
  for (const auto& name : {"euclidean", "iwasawa", "gkl_surface", "random_polynomial:5"}) {
    const auto e = catalog_get(name);
    for (const auto& p : sample_points(e.metric, e.region, 5)) {
      const PointAnalysis a = analyze_point(e.metric, p);
      const Theta2Check t = theta2_gamma_check(a.chern, a.riemann);
      CHECK_MESSAGE(t.theta2_formula < 1e-10, name);
      CHECK_MESSAGE(t.gamma_formula < 1e-10, name);
      CHECK_MESSAGE(t.Theta2_routes < 1e-7, name);
      CHECK_MESSAGE(t.theta2_01_part < 1e-12, name);
      CHECK_MESSAGE(t.Theta2_02_part < 1e-10, name);
    }
  }
}

TEST_CASE("d sigma2 two routes") {
  for (const auto& name : {"euclidean", "iwasawa", "gkl_surface"}) {
    const auto e = catalog_get(name);
    for (const auto& p : sample_points(e.metric, e.region, 5)) {
      const PointAnalysis a = analyze_point(e.metric, p);
      CHECK_MESSAGE(dsigma2_check(a.chern, a.riemann) < 1e-5, name);
    }
  }
}

TEST_CASE("sigma forms are semipositive") {
  for (const auto& name : {"iwasawa", "random_polynomial:1"}) {
    const auto e = catalog_get(name);
    for (const auto& p : sample_points(e.metric, e.region, 5)) {
      const PointAnalysis a = analyze_point(e.metric, p);
      CHECK(sigma2_min_eigenvalue(a.chern, a.riemann) > -1e-10);
      CHECK(sigma1_min_eigenvalue(a.chern, a.riemann) > -1e-10);
    }
  }
}
