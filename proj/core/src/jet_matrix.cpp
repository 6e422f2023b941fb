#include "hermitlab/jet_matrix.hpp"

#include <algorithm>
#include <cmath>

#include "hermitlab/error.hpp"

namespace hermitlab {

JetMatrix::JetMatrix(int rows, int cols, int dirs)
    : rows_(rows), cols_(cols), entries_(static_cast<std::size_t>(rows * cols), Jet::constant(0.0, dirs)) {}

JetMatrix JetMatrix::identity(int n, int dirs) {
  JetMatrix m(n, n, dirs);
  for (int i = 0; i < n; ++i) m(i, i) = Jet::constant(1.0, dirs);
  return m;
}

JetMatrix JetMatrix::from_values(const Eigen::MatrixXcd& v, int dirs) {
  JetMatrix m(static_cast<int>(v.rows()), static_cast<int>(v.cols()), dirs);
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) m(i, j) = Jet::constant(v(i, j), dirs);
  }
  return m;
}

Eigen::MatrixXcd JetMatrix::values() const {
  Eigen::MatrixXcd v(rows_, cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) v(i, j) = (*this)(i, j).value();
  }
  return v;
}

JetMatrix JetMatrix::partial(int direction) const {
  JetMatrix out(rows_, cols_);
  for (std::size_t k = 0; k < entries_.size(); ++k) out.entries_[k] = entries_[k].partial(direction);
  return out;
}

JetMatrix JetMatrix::adjoint() const {
  JetMatrix out(cols_, rows_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j).conj();
  }
  return out;
}

JetMatrix JetMatrix::transpose() const {
  JetMatrix out(cols_, rows_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  }
  return out;
}

int JetMatrix::min_order() const {
  int o = Jet::kMaxOrder;
  for (const auto& e : entries_) o = std::min(o, e.order());
  return o;
}

double JetMatrix::hermitian_defect() const {
  double m = 0.0;
  for (int i = 0; i < rows_; ++i) {
    for (int j = i; j < cols_; ++j) m = std::max(m, max_abs_diff((*this)(i, j), (*this)(j, i).conj()));
  }
  return m;
}

JetMatrix operator*(const JetMatrix& a, const JetMatrix& b) {
  if (a.cols() != b.rows()) throw InvalidInput("jet matrix product shape mismatch");
  JetMatrix out(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < b.cols(); ++j) {
      Jet acc = a(i, 0) * b(0, j);
      for (int k = 1; k < a.cols(); ++k) acc += a(i, k) * b(k, j);
      out(i, j) = std::move(acc);
    }
  }
  return out;
}

JetMatrix operator+(const JetMatrix& a, const JetMatrix& b) {
  JetMatrix out = a;
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) out(i, j) += b(i, j);
  }
  return out;
}

JetMatrix operator-(const JetMatrix& a, const JetMatrix& b) {
  JetMatrix out = a;
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) out(i, j) -= b(i, j);
  }
  return out;
}

JetMatrix operator*(const Jet& s, const JetMatrix& a) {
  JetMatrix out = a;
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) out(i, j) = s * a(i, j);
  }
  return out;
}

JetMatrix inverse(const JetMatrix& m) {
  const int n = m.rows();
  if (n != m.cols()) throw InvalidInput("inverse of a non-square jet matrix");
  JetMatrix a = m;
  int dirs = 0;
  for (int i = 0; i < n; ++i) dirs = std::max(dirs, m(i, i).dirs());
  JetMatrix inv = JetMatrix::identity(n, dirs);
  double scale = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) scale = std::max(scale, std::abs(m(i, j).value()));
  }
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r) {
      if (std::abs(a(r, col).value()) > std::abs(a(pivot, col).value())) pivot = r;
    }
    if (std::abs(a(pivot, col).value()) <= 1e-14 * std::max(scale, 1e-300)) {
      throw SingularEvaluation("jet matrix is numerically singular");
    }
    if (pivot != col) {
      for (int j = 0; j < n; ++j) {
        std::swap(a(pivot, j), a(col, j));
        std::swap(inv(pivot, j), inv(col, j));
      }
    }
    const Jet p = a(col, col);
    for (int j = 0; j < n; ++j) {
      a(col, j) /= p;
      inv(col, j) /= p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const Jet f = a(r, col);
      if (f.max_abs() == 0.0) continue;
      for (int j = 0; j < n; ++j) {
        a(r, j) -= f * a(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

JetMatrix cholesky(const JetMatrix& h) {
  const int n = h.rows();
  if (n != h.cols()) throw InvalidInput("cholesky of a non-square jet matrix");
  const Eigen::MatrixXcd v = h.values();
  const Eigen::MatrixXcd sym = 0.5 * (v + v.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(sym, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() <= 1e-10) {
    throw DegenerateMetric("metric is not positive definite (min eigenvalue " +
                           std::to_string(eig.eigenvalues().minCoeff()) + ")");
  }
  JetMatrix l(n, n);
  for (int j = 0; j < n; ++j) {
    Jet d = h(j, j);
    for (int k = 0; k < j; ++k) d -= abs2(l(j, k));
    // the diagonal is real; drop rounding-level imaginary parts from the value
    d.set_value({d.value().real(), 0.0});
    l(j, j) = sqrt(d);
    for (int i = j + 1; i < n; ++i) {
      Jet s = h(i, j);
      for (int k = 0; k < j; ++k) s -= l(i, k) * l(j, k).conj();
      l(i, j) = s / l(j, j);
    }
  }
  return l;
}

double max_abs_diff(const JetMatrix& a, const JetMatrix& b) {
  double m = 0.0;
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) m = std::max(m, max_abs_diff(a(i, j), b(i, j)));
  }
  return m;
}

}  // namespace hermitlab
