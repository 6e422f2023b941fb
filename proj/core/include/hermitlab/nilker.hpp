#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hermitlab/tensor.hpp"

namespace hermitlab {

/// Pairwise anti-commuting square-zero matrices (A_i A_j + A_j A_i = 0 for all
/// i, j, including i = j), validated on construction.
class NilpotentFamily {
 public:
  NilpotentFamily() = default;
  /// Throws InvalidInput when shapes differ or the relations fail beyond
  /// tol * (1 + max |A|^2).
  explicit NilpotentFamily(std::vector<Eigen::MatrixXcd> matrices, double tol = 1e-10);

  int n() const { return n_; }
  int m() const { return static_cast<int>(mats_.size()); }
  const std::vector<Eigen::MatrixXcd>& matrices() const { return mats_; }
  const Eigen::MatrixXcd& operator[](int i) const { return mats_.at(static_cast<std::size_t>(i)); }

  /// Largest relation defect, unnormalized.
  static double defect(const std::vector<Eigen::MatrixXcd>& matrices);

 private:
  int n_ = 0;
  std::vector<Eigen::MatrixXcd> mats_;
};

/// A_X for X in C^n from an antisymmetric (1,2) tensor: (A_X)(k,j) = sum_i X_i T^k_{ij},
/// so A_X Y = T(X, Y).
Eigen::MatrixXcd torsion_operator(const CTensor& T, const Eigen::VectorXcd& X);

/// max |sum_r T^k_{ri} T^r_{jl} - T^k_{rj} T^r_{il}|.
double commutation_residual(const CTensor& T);
/// max |T^k_{ij} + T^k_{ji}|.
double antisymmetry_residual(const CTensor& T);

/// {A_{e_1}, .., A_{e_n}}. Throws InvalidInput when T violates the commutation relation or
/// antisymmetry beyond 1e-9 * (1 + max |T|^2).
NilpotentFamily family_from_torsion(const CTensor& T);

/// Weaker premise for the constructive algorithm: T antisymmetric and
/// X -> A_X a family of anti-commuting square-zero operators. Throws
/// InvalidInput otherwise.
void validate_representation(const CTensor& T);

/// Numerical rank with threshold 1e-8 * largest singular value.
int numerical_rank(const Eigen::MatrixXcd& A);

/// Orthonormal basis (columns) of the intersection of the kernels, from the
/// SVD of the stacked matrices.
Eigen::MatrixXcd kernel_oracle(const NilpotentFamily& F);
/// Distance of unit w from the oracle space.
double oracle_membership(const Eigen::MatrixXcd& basis, const Eigen::VectorXcd& w);
/// max_i |A_i w|.
double kernel_residual(const NilpotentFamily& F, const Eigen::VectorXcd& w);

struct InductiveOptions {
  int samples = 50;            // random combinations tried for the max-rank element
  std::uint64_t seed = 0x5EED;
  int max_attempts = 8;        // reruns with fresh combinations if validation fails
};

/// Induction on n: max-rank element A, basis [v | x | y] with A y = v, recursion
/// on the top-left k x k blocks. Returns a unit vector. Throws PreconditionError
/// if no attempt validates.
Eigen::VectorXcd common_kernel_inductive(const NilpotentFamily& F, const InductiveOptions& opt = {});

struct ConstructiveResult {
  Eigen::VectorXcd w;
  int rank = 0;                 // k = rank A_X
  int step = 0;                 // j such that W_j is the returned vector
  std::vector<int> indices;     // y-indices of the product, last one picks v
  bool fallback = false;        // k = 0: inductive route used
};

/// Descending chain W_1 = A_{y_1} .. A_{y_{k-1}} v_k, then all (k-1)-subsets,
/// and so on. Validates A_{e_i} W = 0; throws PreconditionError if every
/// candidate of every step vanishes or fails validation.
ConstructiveResult common_kernel_constructive(const CTensor& T, const Eigen::VectorXcd& X);

// Fixtures.

/// Random GL(n) element with condition number of order 10.
Eigen::MatrixXcd random_gl(int n, std::mt19937_64& rng);
/// T'(X, Y) = P T(P^{-1} X, P^{-1} Y).
CTensor conjugate_torsion(const CTensor& T, const Eigen::MatrixXcd& P);

/// Two-step tensor on V1 + V2 (dims p, q): T(V1, V1) in V2, random coefficients.
CTensor center_torsion(int p, int q, std::mt19937_64& rng);
/// Three-step tensor on L1 + L2 + L3 of C^3 (n = 7) built from the wedge
/// product, padded with `pad` trivial directions.
CTensor exterior_torsion(int pad = 0);
/// Block direct sum.
CTensor direct_sum(const CTensor& a, const CTensor& b);
/// Left multiplication by the generators on the exterior algebra of C^p (n = 2^p).
std::vector<Eigen::MatrixXcd> grassmann_family(int p);

struct NilFixture {
  std::string kind;
  CTensor T;                 // representation, GL-conjugated
  NilpotentFamily family;    // m random combinations A_{X_1}, .., A_{X_m}
  Eigen::VectorXcd X;        // seed vector for the constructive route
};

/// Random fixture with n <= 8, m <= 4.
NilFixture random_fixture(std::mt19937_64& rng);

}  // namespace hermitlab
