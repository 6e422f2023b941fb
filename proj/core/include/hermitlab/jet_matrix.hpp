#pragma once

#include <Eigen/Dense>
#include <vector>

#include "hermitlab/jet.hpp"

namespace hermitlab {

/// Dense row-major matrix of jets.
class JetMatrix {
 public:
  JetMatrix() = default;
  JetMatrix(int rows, int cols, int dirs = 0);

  static JetMatrix identity(int n, int dirs = 0);
  static JetMatrix from_values(const Eigen::MatrixXcd& m, int dirs = 0);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }

  Jet& operator()(int i, int j) { return entries_[static_cast<std::size_t>(i * cols_ + j)]; }
  const Jet& operator()(int i, int j) const {
    return entries_[static_cast<std::size_t>(i * cols_ + j)];
  }

  Eigen::MatrixXcd values() const;
  /// Entrywise derivative along one Wirtinger direction (one order lower).
  JetMatrix partial(int direction) const;
  /// Conjugate transpose.
  JetMatrix adjoint() const;
  JetMatrix transpose() const;
  int min_order() const;

  /// max |entry(i,j) - conj(entry(j,i))| over value and carried derivatives.
  double hermitian_defect() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Jet> entries_;
};

JetMatrix operator*(const JetMatrix& a, const JetMatrix& b);
JetMatrix operator+(const JetMatrix& a, const JetMatrix& b);
JetMatrix operator-(const JetMatrix& a, const JetMatrix& b);
JetMatrix operator*(const Jet& s, const JetMatrix& a);

/// Inverse by Gauss-Jordan elimination with partial pivoting on the values.
/// Throws SingularEvaluation for a numerically singular value matrix.
JetMatrix inverse(const JetMatrix& m);

/// Lower-triangular L with positive real diagonal and L L^* = H.
/// Throws DegenerateMetric when the value of H is not positive definite
/// (minimum eigenvalue <= 1e-10).
JetMatrix cholesky(const JetMatrix& hermitian);

/// Largest slot difference between two equally sized jet matrices.
double max_abs_diff(const JetMatrix& a, const JetMatrix& b);

}  // namespace hermitlab
