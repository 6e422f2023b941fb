#pragma once

#include <span>

#include "hermitlab/expr.hpp"

namespace hermitlab {

inline constexpr double kFdStep = 1e-4;

/// AD vs finite differences, relative to 1 + |AD value|.
struct FdDeviation {
  double first = 0.0;
  double second = 0.0;
};

/// Wirtinger derivatives of one expression: five-point stencils for first and
/// pure second real derivatives, four-point for mixed ones.
FdDeviation expr_fd_deviation(const Expr& e, std::span<const Complex> point, double h = kFdStep);

/// Derivative-dependent quantities recomputed with finite differences.
struct OracleReport {
  double torsion = 0.0;          // holomorphic-frame torsion from FD of g
  double christoffel = 0.0;      // real Christoffels from FD of h
  double chern_curvature = 0.0;  // Chern curvature from FD second derivatives of g
  double riemann = 0.0;          // R from FD of Christoffel values
  double torsion_derivative = 0.0;  // e_l(T) and ebar_l(T) from FD of frame torsion values
  double first() const;
  double second() const;
};

OracleReport fd_oracle(const MetricField& metric, std::span<const Complex> point, double h = kFdStep);

}  // namespace hermitlab
