#include "hermitlab/fd_oracle.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "hermitlab/chern.hpp"
#include "hermitlab/levicivita.hpp"

namespace hermitlab {

namespace {

using Vec = Eigen::VectorXcd;
using Field = std::function<Vec(std::span<const Complex>)>;
constexpr Complex kI{0.0, 1.0};

// Real direction r = 2m (x_m) or 2m+1 (y_m).
std::vector<Complex> shifted(std::span<const Complex> p, int r, double t) {
  std::vector<Complex> q(p.begin(), p.end());
  q[static_cast<std::size_t>(r / 2)] += (r % 2 == 0) ? Complex(t, 0.0) : Complex(0.0, t);
  return q;
}

std::vector<Complex> shifted2(std::span<const Complex> p, int r, double t, int s, double u) {
  const auto q = shifted(p, r, t);
  return shifted(q, s, u);
}

// Real first derivatives, columns indexed by real direction.
std::vector<Vec> real_first(const Field& f, std::span<const Complex> p, int n, double h) {
  std::vector<Vec> out;
  for (int r = 0; r < 2 * n; ++r)
    out.push_back((-f(shifted(p, r, 2 * h)) + 8.0 * f(shifted(p, r, h)) - 8.0 * f(shifted(p, r, -h)) +
                   f(shifted(p, r, -2 * h))) /
                  (12.0 * h));
  return out;
}

std::vector<std::vector<Vec>> real_second(const Field& f, std::span<const Complex> p, int n, double h) {
  const int N = 2 * n;
  const Vec f0 = f(p);
  std::vector<std::vector<Vec>> H(static_cast<std::size_t>(N), std::vector<Vec>(static_cast<std::size_t>(N)));
  for (int r = 0; r < N; ++r)
    for (int s = r; s < N; ++s) {
      Vec v;
      if (r == s) {
        v = (-f(shifted(p, r, 2 * h)) + 16.0 * f(shifted(p, r, h)) - 30.0 * f0 + 16.0 * f(shifted(p, r, -h)) -
             f(shifted(p, r, -2 * h))) /
            (12.0 * h * h);
      } else {
        v = (f(shifted2(p, r, h, s, h)) - f(shifted2(p, r, h, s, -h)) - f(shifted2(p, r, -h, s, h)) +
             f(shifted2(p, r, -h, s, -h))) /
            (4.0 * h * h);
      }
      H[static_cast<std::size_t>(r)][static_cast<std::size_t>(s)] = v;
      H[static_cast<std::size_t>(s)][static_cast<std::size_t>(r)] = v;
    }
  return H;
}

// Wirtinger direction a (a < n: d/dz_a, else d/dzbar_{a-n}) as real combination.
std::pair<Complex, Complex> wirtinger(int a, int n) {
  return a < n ? std::pair{Complex(0.5), -0.5 * kI} : std::pair{Complex(0.5), 0.5 * kI};
}
int wdir(int a, int n) { return 2 * (a < n ? a : a - n); }

std::vector<Vec> wirtinger_first(const std::vector<Vec>& real, int n) {
  std::vector<Vec> out;
  for (int a = 0; a < 2 * n; ++a) {
    const auto [cx, cy] = wirtinger(a, n);
    const int r = wdir(a, n);
    out.push_back(cx * real[static_cast<std::size_t>(r)] + cy * real[static_cast<std::size_t>(r + 1)]);
  }
  return out;
}

Vec wirtinger_second(const std::vector<std::vector<Vec>>& H, int a, int b, int n) {
  const auto [ax, ay] = wirtinger(a, n);
  const auto [bx, by] = wirtinger(b, n);
  const auto ra = static_cast<std::size_t>(wdir(a, n)), rb = static_cast<std::size_t>(wdir(b, n));
  return ax * bx * H[ra][rb] + ax * by * H[ra][rb + 1] + ay * bx * H[ra + 1][rb] + ay * by * H[ra + 1][rb + 1];
}

double rel(Complex ad, Complex fd) { return std::abs(ad - fd) / (1.0 + std::abs(ad)); }

Eigen::MatrixXcd metric_values(const MetricField& m, std::span<const Complex> p) {
  Eigen::MatrixXcd g(m.n, m.n);
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) g(i, j) = m.entry(i, j).eval_value(p);
  return g;
}

Vec flatten(const Eigen::MatrixXcd& M) { return Eigen::Map<const Vec>(M.data(), M.size()); }
Eigen::MatrixXcd unflatten(const Vec& v, int n) { return Eigen::Map<const Eigen::MatrixXcd>(v.data(), n, n); }

}  // namespace

FdDeviation expr_fd_deviation(const Expr& e, std::span<const Complex> point, double h) {
  const int n = static_cast<int>(point.size());
  const Field f = [&](std::span<const Complex> q) {
    Vec v(1);
    v(0) = e.eval_value(q);
    return v;
  };
  const Jet j = e.eval(point);
  const auto d1 = wirtinger_first(real_first(f, point, n, h), n);
  const auto H = real_second(f, point, n, h);
  FdDeviation out;
  for (int a = 0; a < 2 * n; ++a) {
    const Complex ad1 = j.dirs() == 0 ? Complex{} : j.d1(a);
    out.first = std::max(out.first, rel(ad1, d1[static_cast<std::size_t>(a)](0)));
    for (int b = a; b < 2 * n; ++b) {
      const Complex ad2 = j.dirs() == 0 ? Complex{} : j.d2(a, b);
      out.second = std::max(out.second, rel(ad2, wirtinger_second(H, a, b, n)(0)));
    }
  }
  return out;
}

double OracleReport::first() const { return std::max(torsion, christoffel); }
double OracleReport::second() const { return std::max({chern_curvature, riemann, torsion_derivative}); }

OracleReport fd_oracle(const MetricField& metric, std::span<const Complex> point, double h) {
  const int n = metric.n, N = 2 * n;
  OracleReport rep;
  const ChernData c = chern_at(metric, point);
  const RiemannData r = riemann_in_frame(c.g, c.P);

  // Chern side from metric values only
  const Field gf = [&](std::span<const Complex> q) { return flatten(metric_values(metric, q)); };
  const auto dg = wirtinger_first(real_first(gf, point, n, h), n);
  const auto Hg = real_second(gf, point, n, h);
  const Eigen::MatrixXcd g0 = metric_values(metric, point);
  const Eigen::MatrixXcd gi = g0.inverse();
  std::vector<Eigen::MatrixXcd> C, dgm;
  for (int a = 0; a < N; ++a) dgm.push_back(unflatten(dg[static_cast<std::size_t>(a)], n));
  for (int m = 0; m < n; ++m) C.push_back(dgm[static_cast<std::size_t>(m)] * gi);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j) {
        const Complex t = 0.5 * (C[static_cast<std::size_t>(k)](j, i) - C[static_cast<std::size_t>(j)](k, i));
        rep.torsion = std::max(rep.torsion, rel(c.torsion_hol(i, k, j).value(), t));
      }
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) {
      const Eigen::MatrixXcd d2 = unflatten(wirtinger_second(Hg, n + l, k, n), n);
      const Eigen::MatrixXcd theta =
          -(d2 * gi - dgm[static_cast<std::size_t>(k)] * gi * dgm[static_cast<std::size_t>(n + l)] * gi);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) rep.chern_curvature = std::max(rep.chern_curvature, rel(c.theta_curv_hol(i, j, k, l), theta(i, j)));
    }

  // Christoffels from FD of the real metric
  auto real_metric = [&](const Eigen::MatrixXcd& g) {
    Eigen::MatrixXcd hm(N, N);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const double re = 2.0 * g(i, j).real(), im = 2.0 * g(i, j).imag();
        hm(2 * i, 2 * j) = re;
        hm(2 * i + 1, 2 * j + 1) = re;
        hm(2 * i, 2 * j + 1) = im;
        hm(2 * i + 1, 2 * j) = -im;
      }
    return hm;
  };
  const Field hf = [&](std::span<const Complex> q) { return flatten(real_metric(metric_values(metric, q))); };
  const auto dh = real_first(hf, point, n, h);
  const Eigen::MatrixXcd h0 = real_metric(g0);
  const Eigen::MatrixXcd hi = h0.inverse();
  auto dH = [&](int d, int b, int cc) { return unflatten(dh[static_cast<std::size_t>(d)], N)(b, cc); };
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b)
      for (int cc = 0; cc < N; ++cc) {
        Complex s{};
        for (int d = 0; d < N; ++d) s += 0.5 * hi(a, d) * (dH(b, d, cc) + dH(cc, d, b) - dH(d, b, cc));
        rep.christoffel = std::max(rep.christoffel, rel(r.Gamma(a, b, cc).value(), s));
      }

  // Riemann from FD of Christoffel values
  const Field Gf = [&](std::span<const Complex> q) {
    const RiemannData rq = riemann_at(metric, q);
    Vec v(N * N * N);
    for (int a = 0; a < N; ++a)
      for (int b = 0; b < N; ++b)
        for (int cc = 0; cc < N; ++cc) v((a * N + b) * N + cc) = rq.Gamma(a, b, cc).value();
    return v;
  };
  const auto dG = real_first(Gf, point, n, h);
  const Vec G0 = Gf(point);
  auto G = [&](int a, int b, int cc) { return G0((a * N + b) * N + cc); };
  auto dGv = [&](int e, int a, int b, int cc) { return dG[static_cast<std::size_t>(e)]((a * N + b) * N + cc); };
  for (int cc = 0; cc < N; ++cc)
    for (int d = 0; d < N; ++d)
      for (int b = 0; b < N; ++b)
        for (int w = 0; w < N; ++w) {
          Complex s{};
          for (int a = 0; a < N; ++a) {
            Complex up = dGv(cc, a, d, b) - dGv(d, a, cc, b);
            for (int e = 0; e < N; ++e) up += G(a, cc, e) * G(e, d, b) - G(a, d, e) * G(e, cc, b);
            s += h0(w, a) * up;
          }
          rep.riemann = std::max(rep.riemann, rel(r.Rreal(cc, d, b, w), s));
        }

  // Frame torsion derivatives from FD of frame torsion values
  CTensor dT, dTbar;
  raw_torsion_derivatives(c, dT, dTbar);
  const Field Tf = [&](std::span<const Complex> q) {
    const ChernData cq = chern_at(metric, q);
    Vec v(n * n * n);
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) v((k * n + i) * n + j) = cq.T(k, i, j).value();
    return v;
  };
  const auto dTw = wirtinger_first(real_first(Tf, point, n, h), n);
  for (int l = 0; l < n; ++l) {
    Vec el = Vec::Zero(n * n * n), ebl = Vec::Zero(n * n * n);
    for (int m = 0; m < n; ++m) {
      el += c.frame(l, m) * dTw[static_cast<std::size_t>(m)];
      ebl += std::conj(c.frame(l, m)) * dTw[static_cast<std::size_t>(n + m)];
    }
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          rep.torsion_derivative = std::max(rep.torsion_derivative, rel(dT(k, i, j, l), el((k * n + i) * n + j)));
          rep.torsion_derivative = std::max(rep.torsion_derivative, rel(dTbar(k, i, j, l), ebl((k * n + i) * n + j)));
        }
  }
  return rep;
}

}  // namespace hermitlab
