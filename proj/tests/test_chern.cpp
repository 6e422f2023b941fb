#include <doctest.h>

#include "hermitlab/catalog.hpp"
#include "hermitlab/chern.hpp"
#include "support.hpp"

using namespace hermitlab;

TEST_CASE("Euclidean Chern data vanish") {
  const auto e = catalog_get("euclidean");
  const ChernData c = chern_at(e.metric, support::Point{{0.3, 0.1}, {-0.2, 0.5}});
  CHECK(torsion_norm(c) == 0.0);
  CHECK(curvature_norm(c) == 0.0);
  CHECK(eta_norm(c) == 0.0);
  CHECK(c.theta_max() == 0.0);
  CHECK(max_abs(c.covT) == 0.0);
  CHECK((c.frame - Eigen::MatrixXcd::Identity(2, 2)).norm() == 0.0);
}

TEST_CASE("Iwasawa: flat, balanced, torsion one half") {
  const auto e = catalog_get("iwasawa");
  for (const auto& p : support::sample("iwasawa", 20)) {
    const ChernData c = chern_at(e.metric, p);
    CHECK(curvature_norm(c) < 1e-9);
    CHECK(eta_norm(c) < 1e-12);
  }
  // tau_3 = -phi_1 ^ phi_2 at z1 = 0, frame e = (d1, d2 + z1 d3, d3)
  const ChernData c0 = chern_at(e.metric, support::Point{{0, 0}, {0.3, 0.2}, {-0.1, 0.4}});
  CHECK(std::abs(c0.T(2, 0, 1).value() + 0.5) < 1e-14);
  CHECK(std::abs(c0.T(2, 1, 0).value() - 0.5) < 1e-14);
  CHECK(std::abs(std::abs(c0.T(2, 0, 1).value()) - 0.5) < 1e-14);
}

TEST_CASE("Fubini-Study chart curvature by the log formula") {
  // n = 1: Theta = -d_zbar d_z log g dz ^ dzbar, so R^h = -(log g)_{z zbar} / g = 2
  const auto e = catalog_get("fubini_study_chart");
  const Expr g = e.metric.entry(0, 0);
  std::mt19937_64 rng(3);
  for (int t = 0; t < 5; ++t) {
    const auto p = support::random_point(rng, 1, 1.5);
    const support::Scalar logg = [&](const support::Point& q) { return std::log(g.eval_value(q)); };
    const Complex ddbar = support::wirtinger_fd2(logg, p, 0, 1);
    const ChernData c = chern_at(e.metric, p);
    CHECK(std::abs(c.theta_curv_hol(0, 0, 0, 0) + ddbar) < 1e-6);
    CHECK(std::abs(c.Rh(0, 0, 0, 0) - 2.0) < 1e-12);
  }
}

TEST_CASE("structure equations on the sweep") {
  for (const auto& name : support::sweep_names(5)) {
    const auto e = catalog_get(name);
    for (const auto& p : sample_points(e.metric, e.region, 5)) {
      const ChernData c = chern_at(e.metric, p);
      const double s = 1.0 + curvature_norm(c);
      CHECK_MESSAGE(bianchi_residual(c) < 1e-10 * s, name);
      CHECK_MESSAGE(curvature_type_residual(c) < 1e-10 * s, name);
      CHECK_MESSAGE(curvature_skew_residual(c) < 1e-10 * s, name);
      CHECK_MESSAGE(balanced_identity_residual(c) < 1e-10, name);
      CHECK_MESSAGE(ddbar_omega_residual(c) < 1e-9 * s, name);
    }
  }
}

TEST_CASE("conformally flat Kahler-like metric satisfies the torsion derivative identity") {
  const auto e = catalog_get("conformal_klike");
  for (const auto& p : support::sample("conformal_klike", 10)) {
    const ChernData c = chern_at(e.metric, p);
    CHECK(torsion_derivative_residual(c) < 1e-8);
    CHECK(kahler_like_symmetry(c) < 1e-10);
    CHECK(torsion_norm(c) > 1e-3);
  }
}

TEST_CASE("normal frame kills the connection") {
  for (const auto& name : {"iwasawa", "gkl_surface", "random_polynomial:4"}) {
    const auto e = catalog_get(name);
    for (const auto& p : sample_points(e.metric, e.region, 5)) {
      const NormalFrame nf = normal_frame_at(e.metric, p);
      CHECK_MESSAGE(nf.data.theta_max() < 1e-9, name);
      // frame change does not move frame-invariant quantities
      CHECK(std::abs(torsion_norm(nf.data) - torsion_norm(chern_at(e.metric, p))) < 1e-10);
    }
  }
  const auto eu = catalog_get("euclidean");
  const NormalFrame nf = normal_frame_at(eu.metric, support::Point{{0.1, 0}, {0, 0.2}});
  CHECK((nf.data.frame - Eigen::MatrixXcd::Identity(2, 2)).norm() < 1e-15);
}

TEST_CASE("holomorphic torsion from metric derivatives") {
  // tau_i = sum_{k,j} T^i_{kj} dz_k ^ dz_j with T antisymmetric equals the (2,0) part of d of the coframe relation;
  // check T^i_{kj} = (1/2)(d_k g_{j m} - d_j g_{k m}) g^{m i} via finite differences of g
  const auto e = catalog_get("random_polynomial:2");
  const auto p = sample_points(e.metric, e.region, 1)[0];
  const int n = e.metric.n;
  const ChernData c = chern_at(e.metric, p);
  Eigen::MatrixXcd g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = e.metric.entry(i, j).eval_value(p);
  const Eigen::MatrixXcd gi = g.inverse();
  auto dg = [&](int k, int j, int m) {
    const Expr x = e.metric.entry(j, m);
    return support::wirtinger_fd([&](const support::Point& q) { return x.eval_value(q); }, p, k);
  };
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j) {
        Complex t{};
        for (int m = 0; m < n; ++m) t += 0.5 * (dg(k, j, m) - dg(j, k, m)) * gi(m, i);
        CHECK(std::abs(c.torsion_hol(i, k, j).value() - t) < 1e-8);
      }
}
