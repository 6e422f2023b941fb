#include "hermitlab/conformal.hpp"

#include <algorithm>
#include <cmath>

#include "hermitlab/error.hpp"

namespace hermitlab {

namespace {

constexpr Complex kI{0.0, 1.0};

Jet eval_u(const ConformalFactor& u, std::span<const Complex> p) { return u.u.eval(p); }

// Wirtinger-to-real derivative matrix: row r = 2m (x_m) or 2m+1 (y_m).
Eigen::MatrixXcd real_from_wirtinger(int n) {
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  for (int m = 0; m < n; ++m) {
    M(2 * m, m) = 1.0;
    M(2 * m, n + m) = 1.0;
    M(2 * m + 1, m) = kI;
    M(2 * m + 1, n + m) = -kI;
  }
  return M;
}

struct RealDerivs {
  Complex value;
  Eigen::VectorXcd grad;  // real partials
  Eigen::MatrixXcd hess;  // Riemannian Hessian in real coordinates
};

RealDerivs hessian(const Jet& f, const RiemannData& r) {
  const int n = r.n, m = 2 * n;
  const Eigen::MatrixXcd M = real_from_wirtinger(n);
  Eigen::VectorXcd d1(m);
  Eigen::MatrixXcd d2(m, m);
  for (int a = 0; a < m; ++a) {
    d1(a) = f.dirs() == 0 ? Complex{} : f.d1(a);
    for (int b = 0; b < m; ++b) d2(a, b) = f.dirs() == 0 ? Complex{} : f.d2(a, b);
  }
  RealDerivs out;
  out.value = f.value();
  out.grad = M * d1;
  out.hess = M * d2 * M.transpose();
  for (int b = 0; b < m; ++b)
    for (int c = 0; c < m; ++c)
      for (int a = 0; a < m; ++a) out.hess(b, c) -= r.Gamma(a, b, c).value() * out.grad(a);
  return out;
}

Complex bilinear(const Eigen::MatrixXcd& H, const Eigen::VectorXcd& x, const Eigen::VectorXcd& y) {
  return (x.transpose() * H * y)(0, 0);
}

}  // namespace

ConformalFactor ConformalFactor::parse(std::string_view src, int n) {
  return ConformalFactor{hermitlab::parse(src, n), std::string(src)};
}

void ConformalFactor::check_real(const std::vector<std::vector<Complex>>& points) const {
  for (const auto& p : points) {
    const Complex v = u.eval_value(p);
    if (!(std::abs(v.imag()) < 1e-12))
      throw InvalidInput("conformal exponent u = " + text + " is not real (Im u = " + std::to_string(v.imag()) + ")");
  }
}

MetricField conformal_metric(const MetricField& metric, const ConformalFactor& u) {
  MetricField out = metric;
  out.name = metric.name + "*exp(2u)";
  const Expr factor = Expr::call(Expr::Func::Exp, Expr::binary(Expr::Kind::Mul, Expr::literal(2.0), u.u));
  for (auto& e : out.entries) e = Expr::binary(Expr::Kind::Mul, factor, e);
  return out;
}

double torsion_transform_check(const MetricField& metric, const ConformalFactor& u, std::span<const Complex> p) {
  const ChernData c = chern_at(metric, p);
  const ChernData ct = chern_at(conformal_metric(metric, u), p);
  const Jet uj = eval_u(u, p);
  const double eu = std::exp(uj.value().real());
  const int n = c.n;
  std::vector<Complex> du(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) du[static_cast<std::size_t>(j)] = c.e(j, uj);
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        Complex rhs = c.T(i, j, k).value();
        if (i == k) rhs += du[static_cast<std::size_t>(j)];
        if (i == j) rhs -= du[static_cast<std::size_t>(k)];
        worst = std::max(worst, std::abs(eu * ct.T(i, j, k).value() - rhs));
      }
  return worst;
}

ConnectionTransform connection_transform_check(const MetricField& metric, const ConformalFactor& u, std::span<const Complex> p) {
  const ChernData c = chern_at(metric, p);
  const RiemannData r = riemann_in_frame(c.g, c.P);
  const MetricField mt = conformal_metric(metric, u);
  const ChernData ct = chern_at(mt, p);
  const RiemannData rt = riemann_in_frame(ct.g, ct.P);
  const Jet uj = eval_u(u, p);
  const int n = c.n;
  std::vector<Complex> du(static_cast<std::size_t>(n)), dub(static_cast<std::size_t>(n));
  std::vector<Form> phi, phib;
  for (int j = 0; j < n; ++j) {
    du[static_cast<std::size_t>(j)] = c.e(j, uj);
    dub[static_cast<std::size_t>(j)] = c.ebar(j, uj);
    phi.push_back(c.phi(j).values());
    phib.push_back(c.phi(j).values().conj());
  }
  ConnectionTransform out;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const auto si = static_cast<std::size_t>(i), sj = static_cast<std::size_t>(j);
      const Form e1 = rt.th1(i, j) - r.th1(i, j) - Jet(du[si]) * phi[sj] + Jet(dub[sj]) * phib[si];
      const Form e2 = rt.th2(i, j) - r.th2(i, j) - Jet(dub[si]) * phi[sj] + Jet(dub[sj]) * phi[si];
      out.theta1 = std::max(out.theta1, e1.max_abs());
      out.theta2 = std::max(out.theta2, e2.max_abs());
    }
  return out;
}

double ddbar_u_norm(const ChernData& base, const ConformalFactor& u) {
  const Jet uj = eval_u(u, base.point);
  const int n = base.n;
  if (uj.dirs() == 0) return 0.0;
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Complex s{};
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) s += base.frame(i, a) * std::conj(base.frame(j, b)) * uj.d2(a, n + b);
      worst = std::max(worst, std::abs(s));
    }
  return worst;
}

double FactorConditions::max() const { return std::max({hessian_20, hessian_11, trace, harmonic}); }

FactorConditions factor_conditions(const PointAnalysis& base, const ConformalFactor& u) {
  const RiemannData& r = base.riemann;
  const int n = r.n;
  const Jet uj = eval_u(u, base.point);
  const Jet lam = exp(-uj);
  const Jet f = exp(Jet(static_cast<double>(n - 1)) * uj);
  const RealDerivs L = hessian(lam, r);
  const RealDerivs F = hessian(f, r);
  const double l = L.value.real();
  auto fr = [&](int s) { return Eigen::VectorXcd(r.frame_real.row(s).transpose()); };
  double grad2 = 0.0;
  for (int k = 0; k < n; ++k) grad2 += std::norm((fr(k).transpose() * L.grad)(0, 0));
  FactorConditions out;
  Complex lap{}, lapf{};
  for (int i = 0; i < n; ++i) {
    lap += bilinear(L.hess, fr(i), fr(n + i));
    lapf += bilinear(F.hess, fr(i), fr(n + i));
    for (int j = 0; j < n; ++j) {
      out.hessian_20 = std::max(out.hessian_20, std::abs(bilinear(L.hess, fr(i), fr(j))) / l);
      const Complex mixed = l * bilinear(L.hess, fr(i), fr(n + j)) - (i == j ? grad2 : 0.0);
      out.hessian_11 = std::max(out.hessian_11, std::abs(mixed) / (l * l));
    }
  }
  out.trace = std::abs(l * lap - static_cast<double>(n) * grad2) / (l * l);
  out.harmonic = std::abs(lapf) / F.value.real();
  return out;
}

ConformalConditionReport gk_conformal_conditions(const MetricField& base, const ConformalFactor& u,
                                                 const std::vector<std::vector<Complex>>& points,
                                                 ConformalBranch branch, double tolerance) {
  if (points.empty()) throw InvalidInput("conformal conditions need at least one point");
  u.check_real(points);
  std::vector<PointAnalysis> analyses;
  for (const auto& p : points) analyses.push_back(analyze_point(base, p));
  const ClassificationReport base_rep = classify_analyses(analyses, tolerance);
  const char* needed = branch == ConformalBranch::GKahlerLike ? "g_kahler_like" : "kahler_like";
  if (!base_rep.flag(needed))
    throw PreconditionError(std::string("base metric ") + base.name + " is not " + needed + " on the sample");

  ConformalConditionReport rep;
  rep.branch = branch;
  for (const auto& a : analyses) {
    if (branch == ConformalBranch::GKahlerLike) {
      const FactorConditions t = factor_conditions(a, u);
      if (t.max() >= rep.condition) rep.factor = t;
      rep.condition = std::max(rep.condition, t.max());
    } else {
      rep.condition = std::max(rep.condition, ddbar_u_norm(a.chern, u));
    }
  }
  rep.condition_holds = rep.condition < tolerance;
  rep.transformed = classify_at(conformal_metric(base, u), points, tolerance);
  rep.transformed_flag = rep.transformed.flag(needed);
  return rep;
}

}  // namespace hermitlab
