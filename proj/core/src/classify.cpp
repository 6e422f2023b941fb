#include "hermitlab/classify.hpp"

#include <algorithm>
#include <cmath>

#include "hermitlab/error.hpp"

namespace hermitlab {

namespace {

constexpr Complex kI{0.0, 1.0};

double rel(Complex lhs, Complex rhs) {
  return std::abs(lhs - rhs) / (1.0 + std::max(std::abs(lhs), std::abs(rhs)));
}

void subsets(int size, int count, int start, std::vector<int>& cur, const auto& visit) {
  if (static_cast<int>(cur.size()) == count) {
    visit(cur);
    return;
  }
  for (int s = start; s < size; ++s) {
    cur.push_back(s);
    subsets(size, count, s + 1, cur, visit);
    cur.pop_back();
  }
}

}  // namespace

PointAnalysis analyze_point(const MetricField& metric, std::span<const Complex> point) {
  PointAnalysis a;
  a.point.assign(point.begin(), point.end());
  a.chern = chern_at(metric, point);
  a.riemann = riemann_in_frame(a.chern.g, a.chern.P);
  return a;
}

double curvature_scale(const PointAnalysis& a) {
  return std::max(max_abs(a.chern.Rh), max_abs(a.riemann.R));
}

double frame_norm(const Form& f, const ChernData& d) {
  const int n = d.n;
  std::vector<Eigen::VectorXcd> vecs;
  for (int a = 0; a < n; ++a) vecs.push_back(d.e_vec(a));
  for (int a = 0; a < n; ++a) vecs.push_back(d.ebar_vec(a));
  int deg = f.degree();
  if (deg <= 0) return deg == 0 && !f.terms().empty() ? f.max_abs() : 0.0;
  double worst = 0.0;
  std::vector<int> cur;
  subsets(2 * n, deg, 0, cur, [&](const std::vector<int>& s) {
    std::vector<Eigen::VectorXcd> args;
    for (int i : s) args.push_back(vecs[static_cast<std::size_t>(i)]);
    worst = std::max(worst, std::abs(f.evaluate(args)));
  });
  return worst;
}

std::map<std::string, double> flag_residuals(const PointAnalysis& a) {
  const ChernData& c = a.chern;
  std::map<std::string, double> r;
  r["kahler"] = torsion_norm(c);
  r["balanced"] = eta_norm(c);
  r["kahler_like"] = kahler_like_symmetry(c);
  r["g_kahler_like"] = theta2_norm(a.riemann);
  r["pluriclosed"] = frame_norm(Jet(kI) * c.omega().delbar().del(), c);
  r["hermitian_flat"] = curvature_norm(c);
  return r;
}

bool ClassificationReport::consistent() const {
  for (const auto& [name, f] : flags) {
    if (f.value && !(f.residual < tolerance)) return false;
  }
  if (flag("kahler")) {
    for (const auto& [name, f] : flags) {
      if (name != "hermitian_flat" && !f.value) return false;
    }
  }
  return true;
}

ClassificationReport classify_analyses(const std::vector<PointAnalysis>& analyses, double tolerance) {
  if (analyses.empty()) throw InvalidInput("classification needs at least one point");
  ClassificationReport rep;
  rep.tolerance = tolerance;
  for (auto name : kFlagNames) rep.flags[std::string(name)] = FlagResult{};
  for (std::size_t p = 0; p < analyses.size(); ++p) {
    const auto& a = analyses[p];
    rep.points.push_back(a.point);
    const double scale = 1.0 + curvature_scale(a);
    for (const auto& [name, raw] : flag_residuals(a)) {
      FlagResult& f = rep.flags[name];
      const double v = raw / scale;
      if (p == 0 || v > f.residual) {
        f.residual = v;
        f.worst_point = static_cast<int>(p);
      }
    }
  }
  for (auto& [name, f] : rep.flags) f.value = f.residual < tolerance;
  return rep;
}

ClassificationReport classify_at(const MetricField& metric, const std::vector<std::vector<Complex>>& points,
                                 double tolerance) {
  if (points.empty()) throw InvalidInput("classification needs at least one point");
  std::vector<PointAnalysis> analyses;
  analyses.reserve(points.size());
  for (const auto& p : points) analyses.push_back(analyze_point(metric, p));
  return classify_analyses(analyses, tolerance);
}

double TorsionCurvatureResiduals::max() const { return std::max({torsion_derivative, r_ijk_lbar, r_ij_kbar_lbar, r_k_lbar_i_jbar}); }

TorsionCurvatureResiduals torsion_curvature_suite(const PointAnalysis& a) {
  const ChernData& c = a.chern;
  const RiemannData& r = a.riemann;
  const int n = c.n;
  const CTensor T = values(c.T);
  auto bar = [](Complex z) { return std::conj(z); };
  TorsionCurvatureResiduals out;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          Complex r22 = c.covT(l, i, j, k);
          Complex r23 = c.covTbar(l, i, j, k) - c.covTbar(k, i, j, l);
          Complex r24 = c.Rh(k, l, i, j) - c.covTbar(j, i, k, l) - bar(c.covTbar(i, j, l, k));
          for (int q = 0; q < n; ++q) {
            r22 += T(l, q, i) * T(q, j, k) - T(l, q, j) * T(q, i, k);
            r23 += 2.0 * T(q, i, j) * bar(T(q, k, l)) + T(k, q, i) * bar(T(j, q, l)) +
                   T(l, q, j) * bar(T(i, q, k)) - T(l, q, i) * bar(T(j, q, k)) - T(k, q, j) * bar(T(i, q, l));
            r24 += T(q, i, k) * bar(T(q, j, l)) - T(j, q, k) * bar(T(i, q, l)) - T(l, q, i) * bar(T(k, q, j));
          }
          out.torsion_derivative = std::max(out.torsion_derivative, rel(2.0 * c.covTbar(k, i, j, l), c.Rh(j, l, i, k) - c.Rh(i, l, j, k)));
          out.r_ijk_lbar = std::max(out.r_ijk_lbar, rel(r.R(i, j, k, n + l), r22));
          out.r_ij_kbar_lbar = std::max(out.r_ij_kbar_lbar, rel(r.R(i, j, n + k, n + l), r23));
          out.r_k_lbar_i_jbar = std::max(out.r_k_lbar_i_jbar, rel(r.R(k, n + l, i, n + j), r24));
        }
  return out;
}

double eta_trace_residual(const ChernData& d) {
  Complex lhs{}, rhs{};
  for (int i = 0; i < d.n; ++i) {
    for (int r = 0; r < d.n; ++r) lhs += d.covTbar(r, r, i, i);
    rhs += std::norm(d.eta(i));
  }
  return std::abs(lhs - rhs);
}

double BothLikeResiduals::max() const { return std::max({quadratic_first, quadratic_second, norm_identity, trace_product, antiholomorphic_derivative, holomorphic_derivative, commutation}); }

BothLikeResiduals bothlike_suite(const CTensor& T, const CTensor& covT, const CTensor& covTbar) {
  const int n = T.shape()[0];
  auto bar = [](Complex z) { return std::conj(z); };
  BothLikeResiduals out;
  out.torsion_scale = max_abs(T) * max_abs(T);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double l27 = 0.0, r27 = 0.0;
      for (int r = 0; r < n; ++r) {
        l27 += 2.0 * std::norm(T(r, i, j));
        r27 += std::norm(T(i, r, j)) + std::norm(T(j, r, i)) - 2.0 * std::real(bar(T(i, r, i)) * T(j, r, j));
      }
      out.norm_identity = std::max(out.norm_identity, std::abs(l27 - r27));
      Complex s28{};
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) s28 += T(s, r, i) * T(r, s, j);
      out.trace_product = std::max(out.trace_product, std::abs(s28));
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          Complex l25{}, r25{}, l26{}, r26{}, r33{}, l34{}, r34{};
          for (int r = 0; r < n; ++r) {
            l25 += 2.0 * T(r, i, j) * bar(T(r, k, l));
            r25 += T(l, r, i) * bar(T(j, r, k)) + T(k, r, j) * bar(T(i, r, l)) - T(k, r, i) * bar(T(j, r, l)) -
                   T(l, r, j) * bar(T(i, r, k));
            l26 += T(r, i, k) * bar(T(r, j, l));
            r26 += T(j, r, k) * bar(T(i, r, l)) + T(l, r, i) * bar(T(k, r, j));
            r33 += -T(k, r, i) * T(r, j, l) + T(k, r, j) * T(r, i, l);
            l34 += T(k, r, i) * T(r, j, l);
            r34 += T(k, r, j) * T(r, i, l);
          }
          out.quadratic_first = std::max(out.quadratic_first, std::abs(l25 - r25));
          out.quadratic_second = std::max(out.quadratic_second, std::abs(l26 - r26));
          out.antiholomorphic_derivative = std::max(out.antiholomorphic_derivative, std::abs(covTbar(k, i, j, l)));
          out.holomorphic_derivative = std::max(out.holomorphic_derivative, std::abs(covT(k, i, j, l) - r33));
          out.commutation = std::max(out.commutation, std::abs(l34 - r34));
        }
    }
  return out;
}

BothLikeResiduals bothlike_suite(const ChernData& d) { return bothlike_suite(values(d.T), d.covT, d.covTbar); }

double riemann_hermitian_gap(const PointAnalysis& a) {
  const int n = a.chern.n;
  double gap = gk_blocks_norm(a.riemann);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          gap = std::max(gap, std::abs(a.riemann.R(k, n + l, i, n + j) - a.chern.Rh(k, l, i, j)));
  return gap;
}

}  // namespace hermitlab
