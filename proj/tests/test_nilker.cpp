#include <doctest.h>

#include <algorithm>
#include <set>

#include "hermitlab/catalog.hpp"
#include "hermitlab/chern.hpp"
#include "hermitlab/error.hpp"
#include "hermitlab/nilker.hpp"
#include "support.hpp"

using namespace hermitlab;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;

namespace {

// Heisenberg-type T(e1, e2) = e3 on C^3.
CTensor heisenberg() {
  CTensor T({3, 3, 3});
  T(2, 0, 1) = 1.0;
  T(2, 1, 0) = -1.0;
  return T;
}

double phase_free_distance(const VectorXcd& w, const VectorXcd& target) {
  return std::sqrt(std::max(0.0, 1.0 - std::norm(target.dot(w))));
}

}  // namespace

TEST_CASE("single nilpotent matrix") {
  MatrixXcd E = MatrixXcd::Zero(2, 2);
  E(0, 1) = 1.0;
  const NilpotentFamily F({E});
  const VectorXcd w = common_kernel_inductive(F);
  CHECK(phase_free_distance(w, VectorXcd::Unit(2, 0)) < 1e-12);
}

TEST_CASE("zero family returns e1") {
  const NilpotentFamily F({MatrixXcd::Zero(3, 3), MatrixXcd::Zero(3, 3)});
  const VectorXcd w = common_kernel_inductive(F);
  CHECK((w - VectorXcd::Unit(3, 0)).norm() < 1e-15);
  CHECK(kernel_oracle(F).cols() == 3);
}

TEST_CASE("family validation") {
  MatrixXcd A = MatrixXcd::Identity(2, 2);
  CHECK_THROWS_AS(NilpotentFamily({A}), InvalidInput);
  MatrixXcd E = MatrixXcd::Zero(2, 2), F = MatrixXcd::Zero(2, 2);
  E(0, 1) = 1.0;
  F(1, 0) = 1.0;
  CHECK_THROWS_AS(NilpotentFamily({E, F}), InvalidInput);  // EF + FE = I
  CHECK_THROWS_AS(NilpotentFamily({E, MatrixXcd::Zero(3, 3)}), InvalidInput);
}

TEST_CASE("Grassmann family has the top form as common kernel") {
  for (int p = 1; p <= 3; ++p) {
    const NilpotentFamily F(grassmann_family(p));
    CHECK(F.n() == (1 << p));
    const MatrixXcd basis = kernel_oracle(F);
    CHECK(basis.cols() == 1);
    const VectorXcd w = common_kernel_inductive(F);
    CHECK(kernel_residual(F, w) < 1e-12);
    CHECK(std::abs(std::abs(w(F.n() - 1)) - 1.0) < 1e-12);
  }
}

TEST_CASE("constructive route on the Heisenberg tensor") {
  const CTensor T = heisenberg();
  CHECK(commutation_residual(T) < 1e-15);
  const NilpotentFamily F = family_from_torsion(T);
  const auto r = common_kernel_constructive(T, VectorXcd::Unit(3, 0));
  CHECK(r.rank == 1);
  CHECK(!r.fallback);
  CHECK(phase_free_distance(r.w, VectorXcd::Unit(3, 2)) < 1e-12);
  // X in the center: rank 0, inductive fallback
  const auto c = common_kernel_constructive(T, VectorXcd::Unit(3, 2));
  CHECK(c.fallback);
  CHECK(kernel_residual(F, c.w) < 1e-12);
}

TEST_CASE("torsion families") {
  CTensor zero({3, 3, 3});
  const NilpotentFamily Z = family_from_torsion(zero);
  for (const auto& A : Z.matrices()) CHECK(A.norm() == 0.0);

  // round trip: conjugated two-step tensor satisfies the commutation relation and its family is valid
  std::mt19937_64 rng(12);
  const CTensor T = conjugate_torsion(center_torsion(3, 2, rng), random_gl(5, rng));
  CHECK(commutation_residual(T) < 1e-10);
  const NilpotentFamily F = family_from_torsion(T);
  CHECK(NilpotentFamily::defect(F.matrices()) < 1e-10);
  for (int i = 0; i < 5; ++i) {
    VectorXcd x = VectorXcd::Unit(5, i);
    CHECK((torsion_operator(T, x) - F[i]).norm() < 1e-15);
  }

  // Iwasawa torsion satisfies the commutation relation
  const auto iw = catalog_get("iwasawa");
  const CTensor Ti = values(chern_at(iw.metric, sample_points(iw.metric, iw.region, 1)[0]).T);
  CHECK(commutation_residual(Ti) < 1e-12);
  const NilpotentFamily Fi = family_from_torsion(Ti);
  CHECK(kernel_residual(Fi, common_kernel_inductive(Fi)) < 1e-12);

  // a three-step representation is anticommuting but breaks the commutation relation
  const CTensor X = exterior_torsion();
  CHECK(commutation_residual(X) > 1.0);
  CHECK_THROWS_AS(family_from_torsion(X), InvalidInput);
  CHECK_NOTHROW(validate_representation(X));

  // a random antisymmetric tensor is not a representation
  std::normal_distribution<double> gauss;
  CTensor R({3, 3, 3});
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) {
        R(k, i, j) = Complex(gauss(rng), gauss(rng));
        R(k, j, i) = -R(k, i, j);
      }
  CHECK_THROWS_AS(family_from_torsion(R), InvalidInput);
  CHECK_THROWS_AS(validate_representation(R), InvalidInput);
}

TEST_CASE("random fixtures against the brute-force oracle") {
  std::mt19937_64 rng(0x5EED);
  std::set<int> steps;
  for (int f = 0; f < 60; ++f) {
    const NilFixture fx = random_fixture(rng);
    CHECK(fx.family.n() <= 8);
    CHECK(fx.family.m() <= 4);
    const MatrixXcd basis = kernel_oracle(fx.family);
    CHECK(basis.cols() >= 1);
    const VectorXcd w1 = common_kernel_inductive(fx.family);
    const auto w2 = common_kernel_constructive(fx.T, fx.X);
    steps.insert(w2.step);
    for (const VectorXcd* w : {&w1, &w2.w}) {
      CHECK(std::abs(w->norm() - 1.0) < 1e-12);
      CHECK(kernel_residual(fx.family, *w) < 1e-8);
      CHECK(oracle_membership(basis, *w) < 1e-8);
    }
  }
  // some fixture needed a shorter chain than its rank
  CHECK(std::any_of(steps.begin(), steps.end(), [](int s) { return s >= 2; }));
}

TEST_CASE("constructive route on a three-step fixture") {
  std::mt19937_64 rng(21);
  const CTensor T = conjugate_torsion(exterior_torsion(1), random_gl(8, rng));
  std::vector<MatrixXcd> mats;
  for (int i = 0; i < 8; ++i) mats.push_back(torsion_operator(T, VectorXcd::Unit(8, i)));
  const NilpotentFamily F(mats, 1e-9);
  std::normal_distribution<double> gauss;
  VectorXcd X(8);
  for (int i = 0; i < 8; ++i) X(i) = Complex(gauss(rng), gauss(rng));
  const auto r = common_kernel_constructive(T, X);
  CHECK(r.rank >= 2);
  CHECK(kernel_residual(F, r.w) < 1e-8);
  CHECK(oracle_membership(kernel_oracle(F), r.w) < 1e-8);
}

TEST_CASE("numerical rank") {
  MatrixXcd A = MatrixXcd::Zero(3, 3);
  CHECK(numerical_rank(A) == 0);
  A(0, 1) = 1.0;
  A(1, 2) = 1e-12;
  CHECK(numerical_rank(A) == 1);
  A(1, 2) = 1e-6;
  CHECK(numerical_rank(A) == 2);
}
