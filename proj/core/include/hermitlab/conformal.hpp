#pragma once

#include <span>
#include <string>
#include <vector>

#include "hermitlab/classify.hpp"
#include "hermitlab/expr.hpp"

namespace hermitlab {

/// Real conformal exponent u; the new metric is e^{2u} g.
struct ConformalFactor {
  Expr u;
  std::string text;

  /// Parses over z1..zn. Throws ParseError.
  static ConformalFactor parse(std::string_view src, int n);
  /// Throws InvalidInput when |Im u| >= 1e-12 at some point.
  void check_real(const std::vector<std::vector<Complex>>& points) const;
};

/// Entries multiplied by exp(2u) at the expression level; constraints kept.
MetricField conformal_metric(const MetricField& metric, const ConformalFactor& u);

/// max |e^u T~^i_{jk} - (T^i_{jk} + u_j delta_ik - u_k delta_ij)| in the
/// canonical unitary frames (which are matched: e~ = e^{-u} e).
double torsion_transform_check(const MetricField& metric, const ConformalFactor& u, std::span<const Complex> p);

struct ConnectionTransform {
  double theta1 = 0.0;
  double theta2 = 0.0;
};
ConnectionTransform connection_transform_check(const MetricField& metric, const ConformalFactor& u, std::span<const Complex> p);

/// Frame norm of del delbar u: max |(del delbar u)(e_i, ebar_j)|.
double ddbar_u_norm(const ChernData& base, const ConformalFactor& u);

struct FactorConditions {
  double hessian_20 = 0.0;    // max |H_l(e_i, e_j)| / l
  double hessian_11 = 0.0;    // max |l H_l(e_i, ebar_j) - delta_ij |grad l|^2| / l^2
  double trace = 0.0;         // |l Lap l - n |grad l|^2| / l^2
  double harmonic = 0.0;      // |Lap e^{(n-1)u}| / e^{(n-1)u}
  double max() const;
};
/// lambda = e^{-u}; Hessian from the Levi-Civita connection of the base metric,
/// |grad l|^2 = sum_k |e_k l|^2 and Lap = sum_i H(e_i, ebar_i).
FactorConditions factor_conditions(const PointAnalysis& base, const ConformalFactor& u);

enum class ConformalBranch { KahlerLike, GKahlerLike };

struct ConformalConditionReport {
  ConformalBranch branch = ConformalBranch::GKahlerLike;
  double condition = 0.0;        // worst over points
  bool condition_holds = false;  // condition < tolerance
  bool transformed_flag = false; // g~ flagged kahler_like / g_kahler_like
  bool agrees() const { return condition_holds == transformed_flag; }
  FactorConditions factor;    // G-K-like branch detail
  ClassificationReport transformed;
};

/// Checks the conformal criterion against classification of e^{2u} g.
/// Throws PreconditionError unless the base metric has the branch's flag at
/// every point.
ConformalConditionReport gk_conformal_conditions(const MetricField& base, const ConformalFactor& u,
                                                 const std::vector<std::vector<Complex>>& points,
                                                 ConformalBranch branch, double tolerance = kDefaultTolerance);

}  // namespace hermitlab
