#pragma once

#include <array>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hermitlab/chern.hpp"
#include "hermitlab/levicivita.hpp"

namespace hermitlab {

inline constexpr double kDefaultTolerance = 1e-7;

inline constexpr std::array<std::string_view, 6> kFlagNames = {
    "balanced", "g_kahler_like", "hermitian_flat", "kahler", "kahler_like", "pluriclosed"};

/// Both connections at one point, in the canonical unitary frame.
struct PointAnalysis {
  std::vector<Complex> point;
  ChernData chern;
  RiemannData riemann;
};

PointAnalysis analyze_point(const MetricField& metric, std::span<const Complex> point);

/// Largest curvature component of either connection.
double curvature_scale(const PointAnalysis& a);

/// Unnormalized flag residuals at one point, keyed by flag name.
std::map<std::string, double> flag_residuals(const PointAnalysis& a);

/// Largest value of a homogeneous form on unitary frame vectors e_a, ebar_a.
double frame_norm(const Form& f, const ChernData& d);

struct FlagResult {
  bool value = true;
  double residual = 0.0;  // worst normalized residual over the sample
  int worst_point = 0;
};

struct ClassificationReport {
  std::map<std::string, FlagResult> flags;
  double tolerance = kDefaultTolerance;
  std::vector<std::vector<Complex>> points;

  bool flag(std::string_view name) const { return flags.at(std::string(name)).value; }
  /// flag true => residual under tolerance; kahler => everything except hermitian_flat.
  bool consistent() const;
};

/// Residuals are divided by 1 + curvature_scale at their point; flags AND
/// over points. Throws InvalidInput for an empty point list.
ClassificationReport classify_at(const MetricField& metric, const std::vector<std::vector<Complex>>& points,
                                 double tolerance = kDefaultTolerance);
ClassificationReport classify_analyses(const std::vector<PointAnalysis>& analyses,
                                       double tolerance = kDefaultTolerance);

/// max |lhs - rhs| / (1 + max |lhs|, |rhs|) per identity.
struct TorsionCurvatureResiduals {
  double torsion_derivative = 0.0;  // 2 T^k_{ij,lbar} vs R^h difference
  double r_ijk_lbar = 0.0;  // R_{ijk lbar}
  double r_ij_kbar_lbar = 0.0;  // R_{ij kbar lbar}
  double r_k_lbar_i_jbar = 0.0;  // R_{k lbar i jbar} - R^h_{k lbar i jbar}
  double max() const;
};
TorsionCurvatureResiduals torsion_curvature_suite(const PointAnalysis& a);

/// sum_i eta_{i,ibar} - sum_r |eta_r|^2 (absolute).
double eta_trace_residual(const ChernData& d);

/// Quadratic and derivative torsion identities; residuals are absolute.
struct BothLikeResiduals {
  double quadratic_first = 0.0;
  double quadratic_second = 0.0;
  double norm_identity = 0.0;
  double trace_product = 0.0;
  double antiholomorphic_derivative = 0.0;
  double holomorphic_derivative = 0.0;
  double commutation = 0.0;
  double torsion_scale = 0.0;  // max |T|^2
  double max() const;
};
BothLikeResiduals bothlike_suite(const CTensor& T, const CTensor& covT, const CTensor& covTbar);
BothLikeResiduals bothlike_suite(const ChernData& d);

/// max |R - R^h| over mixed frame slots R_{k lbar i jbar}.
double riemann_hermitian_gap(const PointAnalysis& a);

}  // namespace hermitlab
