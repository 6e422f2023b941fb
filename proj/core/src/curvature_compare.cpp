#include "hermitlab/curvature_compare.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hermitlab/error.hpp"

namespace hermitlab {

namespace {

using Eigen::VectorXcd;
using Eigen::VectorXd;

constexpr Complex kI{0.0, 1.0};

VectorXcd slots(const VectorXcd& x, bool bar) {
  const auto n = x.size();
  VectorXcd s = VectorXcd::Zero(2 * n);
  if (bar)
    s.tail(n) = x.conjugate();
  else
    s.head(n) = x;
  return s;
}

double rel(Complex lhs, Complex rhs) {
  return std::abs(lhs - rhs) / (1.0 + std::max(std::abs(lhs), std::abs(rhs)));
}

VectorXcd unit(int n, int i) {
  VectorXcd e = VectorXcd::Zero(n);
  e(i) = 1.0;
  return e;
}

// Frame coefficients of a (1,0) vector given in real components.
VectorXcd to_frame(const RiemannData& r, const VectorXcd& real) {
  const Eigen::MatrixXcd F = r.frame_real.transpose();
  const VectorXcd c = F.fullPivLu().solve(real);
  return c.head(r.n);
}

}  // namespace

Complex riemann_contract(const PointAnalysis& a, const VectorXcd& x1, bool bar1, const VectorXcd& x2, bool bar2,
                         const VectorXcd& x3, bool bar3, const VectorXcd& x4, bool bar4) {
  const VectorXcd s1 = slots(x1, bar1), s2 = slots(x2, bar2), s3 = slots(x3, bar3), s4 = slots(x4, bar4);
  const int m = 2 * a.chern.n;
  Complex acc{};
  for (int p = 0; p < m; ++p) {
    if (s1(p) == Complex{}) continue;
    for (int q = 0; q < m; ++q) {
      if (s2(q) == Complex{}) continue;
      for (int r = 0; r < m; ++r) {
        if (s3(r) == Complex{}) continue;
        for (int s = 0; s < m; ++s) acc += a.riemann.R(p, q, r, s) * s1(p) * s2(q) * s3(r) * s4(s);
      }
    }
  }
  return acc;
}

Complex chern_contract(const PointAnalysis& a, const VectorXcd& x, const VectorXcd& y, const VectorXcd& z,
                       const VectorXcd& w) {
  const int n = a.chern.n;
  Complex acc{};
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          acc += a.chern.Rh(k, l, i, j) * x(k) * std::conj(y(l)) * z(i) * std::conj(w(j));
  return acc;
}

Complex torsion_contract(const PointAnalysis& a, const VectorXcd& x, const VectorXcd& y, const VectorXcd& z) {
  const int n = a.chern.n;
  Complex acc{};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) acc += a.chern.T(i, j, k).value() * std::conj(x(i)) * y(j) * z(k);
  return acc;
}

Bisectional bisectional(const PointAnalysis& a, const VectorXcd& X, const VectorXcd& Y, double param) {
  const double nx = X.squaredNorm(), ny = Y.squaredNorm();
  if (std::sqrt(nx) <= 1e-12 || std::sqrt(ny) <= 1e-12) throw InvalidInput("bisectional curvature of a zero vector");
  const Complex xxyy = riemann_contract(a, X, false, X, true, Y, false, Y, true);
  const Complex xyyx = riemann_contract(a, X, false, Y, true, Y, false, X, true);
  const Complex ba = (param * xxyy + (1.0 - param) * xyyx) / (nx * ny);
  const Complex hxy = chern_contract(a, X, X, Y, Y) / (nx * ny);
  const Complex hyx = chern_contract(a, Y, Y, X, X) / (nx * ny);
  Bisectional b;
  b.Ba = ba.real();
  b.Bh_xy = hxy.real();
  b.Bh_yx = hyx.real();
  b.imag = std::max({std::abs(xxyy.imag()), std::abs(xyyx.imag()), std::abs(hxy.imag()), std::abs(hyx.imag())}) /
           (nx * ny);
  return b;
}

double holomorphic_sectional_h(const PointAnalysis& a, const VectorXcd& X) {
  return bisectional(a, X, X, 0.0).Bh_xy;
}

double holomorphic_sectional(const PointAnalysis& a, const VectorXcd& X) { return bisectional(a, X, X, 0.0).Ba; }

SectionalComparison sectional_comparison(const PointAnalysis& a, const VectorXcd& X, const VectorXcd& Y) {
  const int n = a.chern.n;
  Complex r41{}, r42{}, r43{};
  for (int k = 0; k < n; ++k) {
    const VectorXcd e = unit(n, k);
    const Complex txy = torsion_contract(a, e, X, Y);
    const Complex tyky = torsion_contract(a, Y, e, Y);
    const Complex txkx = torsion_contract(a, X, e, X);
    const Complex tykx = torsion_contract(a, Y, e, X);
    const Complex txky = torsion_contract(a, X, e, Y);
    r41 += std::norm(txy) + 2.0 * std::real(tyky * std::conj(txkx));
    r42 += std::norm(tykx) + std::norm(txky) - std::norm(txy);
    r43 += 2.0 * std::norm(txkx);
  }
  const Complex l41 = 0.5 * (chern_contract(a, X, X, Y, Y) + chern_contract(a, Y, Y, X, X)) -
                      riemann_contract(a, X, false, Y, true, Y, false, X, true);
  const Complex l42 = chern_contract(a, X, Y, Y, X).real() - riemann_contract(a, X, false, X, true, Y, false, Y, true);
  const Complex hh = chern_contract(a, X, X, X, X);
  const Complex hr = riemann_contract(a, X, false, X, true, X, false, X, true);
  SectionalComparison out;
  out.bisectional_identity = rel(l41, r41);
  out.bisectional_difference = rel(l42, r42);
  out.holomorphic_difference = rel(hh - hr, r43);
  out.gap = (hh - hr).real() / std::pow(X.squaredNorm(), 2);
  return out;
}

double ricci_a(const PointAnalysis& a, const VectorXcd& X, double param) {
  double s = 0.0;
  for (int i = 0; i < a.chern.n; ++i) s += bisectional(a, X, unit(a.chern.n, i), param).Ba;
  return s;
}

RicciCheck ricci_and_scalar(const PointAnalysis& a, const std::vector<VectorXd>& us) {
  const RiemannData& r = a.riemann;
  RicciCheck out;
  for (const VectorXd& u : us) {
    const VectorXcd uc = u.cast<Complex>();
    const VectorXcd ju = r.J(uc);
    const VectorXcd xr = (uc - kI * ju) / std::sqrt(2.0);
    const VectorXcd X = to_frame(r, xr);
    const double rm1 = ricci_a(a, X, -1.0), r0 = ricci_a(a, X, 0.0), r1 = ricci_a(a, X, 1.0);
    out.linear = std::max(out.linear, std::abs(rm1 - (2.0 * r0 - r1)) / (1.0 + std::abs(rm1)));
    const double nu = r.inner(uc, uc).real();
    const double ric = 0.5 * (r.ricci(uc, uc).real() + r.ricci(ju, ju).real()) / nu;
    out.j_invariant = std::max(out.j_invariant, std::abs(rm1 - ric) / (1.0 + std::abs(ric)));
  }
  double total = 0.0;
  for (int i = 0; i < a.chern.n; ++i)
    for (int j = 0; j < a.chern.n; ++j) total += bisectional(a, unit(a.chern.n, i), unit(a.chern.n, j), -1.0).Ba;
  out.scalar = std::abs(total - 0.5 * r.scalar());
  return out;
}

CurvatureDecomposition curvature_decomposition_check(const PointAnalysis& a, const VectorXd& u, const VectorXd& v) {
  const RiemannData& r = a.riemann;
  const VectorXcd uc = u.cast<Complex>(), vc = v.cast<Complex>();
  const VectorXcd ju = r.J(uc), jv = r.J(vc);
  const VectorXcd X = (uc - kI * ju) / std::sqrt(2.0), Y = (vc - kI * jv) / std::sqrt(2.0);
  const VectorXcd Xb = X.conjugate(), Yb = Y.conjugate();
  auto Rq = [&](const VectorXcd& p, const VectorXcd& q) { return r.curvature(p, q, p, q).real(); };
  const Complex lhs = -r.curvature(X, Xb, Y, Yb) + 2.0 * r.curvature(X, Yb, Y, Xb);
  const double rhs = -0.5 * (Rq(uc, vc) + Rq(ju, jv) + Rq(ju, vc) + Rq(uc, jv));
  CurvatureDecomposition out;
  out.identity = rel(lhs, rhs);

  const double nu = r.inner(uc, uc).real(), nv = r.inner(vc, vc).real();
  auto sin2 = [&](const VectorXcd& p, const VectorXcd& q) {
    const double c = r.inner(p, q).real();
    return 1.0 - c * c / (r.inner(p, p).real() * r.inner(q, q).real());
  };
  const double s_uv = sin2(uc, vc), s_ujv = sin2(uc, jv);
  const double s_pairs[4] = {s_uv, sin2(ju, jv), sin2(ju, vc), s_ujv};
  const VectorXcd* pairs[4][2] = {{&uc, &vc}, {&ju, &jv}, {&ju, &vc}, {&uc, &jv}};
  out.degenerate = std::max(s_uv, s_ujv) < 1e-8;
  for (int t = 0; t < 4; ++t) {
    const double area = r.inner(*pairs[t][0], *pairs[t][0]).real() * r.inner(*pairs[t][1], *pairs[t][1]).real() *
                        s_pairs[t];
    out.K[static_cast<std::size_t>(t)] = area > 1e-14 ? -Rq(*pairs[t][0], *pairs[t][1]) / area : 0.0;
  }
  const double nX = r.inner(X, Xb).real(), nY = r.inner(Y, Yb).real();
  out.B_minus1 = lhs.real() / (nX * nY);
  const double decomp = 0.5 * s_uv * (out.K[0] + out.K[1]) + 0.5 * s_ujv * (out.K[2] + out.K[3]);
  // |X|^2 = |u|^2 and |Y|^2 = |v|^2
  out.decomposition = std::max(std::abs(out.B_minus1 - decomp) / (1.0 + std::abs(decomp)),
                               std::abs(nX - nu) + std::abs(nY - nv));
  return out;
}

VectorXcd random_unit(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> N;
  VectorXcd v(n);
  do {
    for (int i = 0; i < n; ++i) v(i) = Complex(N(rng), N(rng));
  } while (v.norm() < 1e-6);
  return v / v.norm();
}

VectorXd random_unit_real(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> N;
  VectorXd v(n);
  do {
    for (int i = 0; i < n; ++i) v(i) = N(rng);
  } while (v.norm() < 1e-6);
  return v / v.norm();
}

CTensor rigidity_torsion(const RigidityPoint& x) {
  CTensor T({3, 3, 3}, Complex{});
  for (int m = 0; m < 3; ++m) {
    const int p = (m + 1) % 3, q = (m + 2) % 3;
    const Complex am = x[static_cast<std::size_t>(m)];
    const Complex bq = x[static_cast<std::size_t>(3 + q)];  // b_{m-1}
    const Complex bp = x[static_cast<std::size_t>(3 + p)];  // b_{m+1}
    T(m, p, q) = am;
    T(m, q, p) = -am;
    T(m, q, m) = bq;
    T(m, m, q) = -bq;
    T(m, p, m) = -bp;
    T(m, m, p) = bp;
  }
  return T;
}

std::vector<Complex> rigidity_residuals(const RigidityPoint& x, RigiditySystem system) {
  std::vector<Complex> out;
  if (system == RigiditySystem::Full) {
    const CTensor T = rigidity_torsion(x);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        Complex s28{};
        for (int r = 0; r < 3; ++r)
          for (int s = 0; s < 3; ++s) s28 += T(s, r, i) * T(r, s, j);
        out.push_back(s28);
        for (int k = 0; k < 3; ++k)
          for (int l = 0; l < 3; ++l) {
            Complex e{};
            for (int r = 0; r < 3; ++r) {
              e += 2.0 * T(r, i, j) * std::conj(T(r, k, l));
              e -= T(l, r, i) * std::conj(T(j, r, k)) + T(k, r, j) * std::conj(T(i, r, l)) -
                   T(k, r, i) * std::conj(T(j, r, l)) - T(l, r, j) * std::conj(T(i, r, k));
            }
            out.push_back(e);
          }
      }
    return out;
  }
  auto a = [&](int i) { return x[static_cast<std::size_t>(i)]; };
  auto b = [&](int i) { return x[static_cast<std::size_t>(3 + i)]; };
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    out.emplace_back(std::norm(a(i)) + std::norm(a(j)) - 2.0 * std::norm(a(k)) -
                     (std::norm(b(i)) + std::norm(b(j)) - 2.0 * std::norm(b(k))));
    out.push_back(b(i) * b(j) - b(k) * a(k));
    out.push_back(a(i) * a(j) - b(k) * b(k));
    if (system == RigiditySystem::Completed)
      out.push_back(b(j) * std::conj(b(k)) + b(i) * std::conj(a(j)) + a(k) * std::conj(b(i)));
  }
  return out;
}

double rigidity_residual(const RigidityPoint& x, RigiditySystem system) {
  double nrm = 0.0;
  for (const auto& c : x) nrm += std::norm(c);
  nrm = std::sqrt(nrm);
  if (nrm == 0.0) throw InvalidInput("rigidity residual at the zero vector");
  RigidityPoint y;
  for (std::size_t i = 0; i < 6; ++i) y[i] = x[i] / nrm;
  double s = 0.0;
  for (const auto& r : rigidity_residuals(y, system)) s += std::norm(r);
  return std::sqrt(s);
}

namespace {

RigidityPoint from_real(const VectorXd& v) {
  RigidityPoint p;
  for (std::size_t i = 0; i < 6; ++i) p[i] = Complex(v(2 * static_cast<int>(i)), v(2 * static_cast<int>(i) + 1));
  return p;
}

VectorXd residual_vector(const VectorXd& v, RigiditySystem system) {
  RigidityPoint p = from_real(v / v.norm());
  const auto r = rigidity_residuals(p, system);
  VectorXd out(2 * static_cast<int>(r.size()));
  for (std::size_t i = 0; i < r.size(); ++i) {
    out(2 * static_cast<int>(i)) = r[i].real();
    out(2 * static_cast<int>(i) + 1) = r[i].imag();
  }
  return out;
}

}  // namespace

RigidityReport n3_rigidity_search(int trials, std::uint64_t seed, RigiditySystem system) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> N;
  RigidityReport rep;
  rep.best = std::numeric_limits<double>::infinity();
  rep.trials = trials;
  for (int t = 0; t < trials; ++t) {
    VectorXd v(12);
    for (int i = 0; i < 12; ++i) v(i) = N(rng);
    v.normalize();
    VectorXd F = residual_vector(v, system);
    double cost = F.squaredNorm();
    double lambda = 1e-3;
    for (int it = 0; it < 60 && cost > 1e-30; ++it) {
      Eigen::MatrixXd Jm(F.size(), 12);
      for (int c = 0; c < 12; ++c) {
        VectorXd vp = v, vm = v;
        vp(c) += 1e-7;
        vm(c) -= 1e-7;
        Jm.col(c) = (residual_vector(vp, system) - residual_vector(vm, system)) / 2e-7;
      }
      const Eigen::MatrixXd H = Jm.transpose() * Jm;
      const VectorXd g = Jm.transpose() * F;
      bool improved = false;
      for (int tries = 0; tries < 8; ++tries) {
        Eigen::MatrixXd Hd = H;
        Hd.diagonal().array() += lambda * (1.0 + H.diagonal().array());
        VectorXd cand = v - Hd.ldlt().solve(g);
        cand.normalize();
        const VectorXd Fc = residual_vector(cand, system);
        if (Fc.squaredNorm() < cost) {
          v = cand;
          F = Fc;
          cost = Fc.squaredNorm();
          lambda = std::max(lambda * 0.3, 1e-12);
          improved = true;
          break;
        }
        lambda *= 10.0;
      }
      if (!improved) break;
    }
    const double res = std::sqrt(cost);
    if (res < rep.best) {
      rep.best = res;
      rep.argmin = from_real(v);
    }
  }
  return rep;
}

}  // namespace hermitlab
