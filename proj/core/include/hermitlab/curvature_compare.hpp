#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "hermitlab/classify.hpp"

namespace hermitlab {

/// Type (1,0) vectors are given by their coefficients in the unitary frame.

/// R(X, Xbar, Y, Ybar)-style contraction of the frame Riemann tensor; a slot
/// flagged `bar` takes the conjugate vector.
Complex riemann_contract(const PointAnalysis& a, const Eigen::VectorXcd& x1, bool bar1,
                         const Eigen::VectorXcd& x2, bool bar2, const Eigen::VectorXcd& x3, bool bar3,
                         const Eigen::VectorXcd& x4, bool bar4);
/// R^h_{X Ybar Z Wbar}.
Complex chern_contract(const PointAnalysis& a, const Eigen::VectorXcd& x, const Eigen::VectorXcd& y,
                       const Eigen::VectorXcd& z, const Eigen::VectorXcd& w);
/// T^X_{YZ} = sum T^i_{jk} conj(X_i) Y_j Z_k.
Complex torsion_contract(const PointAnalysis& a, const Eigen::VectorXcd& x, const Eigen::VectorXcd& y,
                         const Eigen::VectorXcd& z);

struct Bisectional {
  double Ba = 0.0;
  double Bh_xy = 0.0;
  double Bh_yx = 0.0;
  double imag = 0.0;  // largest imaginary part before taking real parts
};

/// Throws InvalidInput when |X| or |Y| <= 1e-12.
Bisectional bisectional(const PointAnalysis& a, const Eigen::VectorXcd& X, const Eigen::VectorXcd& Y, double param);

/// H^h(X) and H(X).
double holomorphic_sectional_h(const PointAnalysis& a, const Eigen::VectorXcd& X);
double holomorphic_sectional(const PointAnalysis& a, const Eigen::VectorXcd& X);

struct SectionalComparison {
  double bisectional_identity = 0.0;  // relative
  double bisectional_difference = 0.0;
  double holomorphic_difference = 0.0;
  double gap = 0.0;   // H^h(X) - H(X)
};
SectionalComparison sectional_comparison(const PointAnalysis& a, const Eigen::VectorXcd& X, const Eigen::VectorXcd& Y);

/// Ric_a(X) = sum_i B_a(X, e_i).
double ricci_a(const PointAnalysis& a, const Eigen::VectorXcd& X, double param);

struct RicciCheck {
  double linear = 0.0;     // Ric_{-1} - (2 Ric_0 - Ric_1)
  double j_invariant = 0.0; // Ric_{-1}(X) - (Ric(u) + Ric(Ju)) / 2
  double scalar = 0.0;     // sum B_{-1}(e_i, e_j) - Scal / 2
};
/// X = (u - iJu)/sqrt(2) for each real u (unnormalized).
RicciCheck ricci_and_scalar(const PointAnalysis& a, const std::vector<Eigen::VectorXd>& us);

struct CurvatureDecomposition {
  bool degenerate = false;  // all four angle factors below 1e-8: resample
  double identity = 0.0;    // relative residual of the curvature identity
  double decomposition = 0.0;
  double B_minus1 = 0.0;
  std::array<double, 4> K{};  // K(u,v), K(Ju,Jv), K(Ju,v), K(u,Jv)
};
CurvatureDecomposition curvature_decomposition_check(const PointAnalysis& a, const Eigen::VectorXd& u, const Eigen::VectorXd& v);

/// Uniform unit vector in C^n.
Eigen::VectorXcd random_unit(int n, std::mt19937_64& rng);
Eigen::VectorXd random_unit_real(int n, std::mt19937_64& rng);

// n = 3 rigidity: (a1, a2, a3, b1, b2, b3) with a_i = T^i_{jk}, b_i = T^j_{ij}
// for cyclic (ijk).
enum class RigiditySystem {
  Literal,    // the three displayed relations
  Completed,  // plus b_j conj(b_k) + b_i conj(a_j) + a_k conj(b_i) = 0
  Full,       // the quadratic torsion identities on the induced T
};

using RigidityPoint = std::array<Complex, 6>;

/// Torsion tensor (k,i,j) built from (a, b).
CTensor rigidity_torsion(const RigidityPoint& x);
std::vector<Complex> rigidity_residuals(const RigidityPoint& x, RigiditySystem system);
/// Euclidean norm of the residual vector at x / |x|.
double rigidity_residual(const RigidityPoint& x, RigiditySystem system);

struct RigidityReport {
  double best = 0.0;
  RigidityPoint argmin{};
  int trials = 0;
};
/// Random unit starts, each refined by Levenberg-Marquardt on the sphere.
RigidityReport n3_rigidity_search(int trials, std::uint64_t seed, RigiditySystem system);

}  // namespace hermitlab
