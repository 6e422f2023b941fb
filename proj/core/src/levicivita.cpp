#include "hermitlab/levicivita.hpp"

#include <algorithm>
#include <cmath>

#include "hermitlab/error.hpp"

namespace hermitlab {

namespace {

constexpr Complex kI{0.0, 1.0};

// derivative along real coordinate r = 2m (x_m) or 2m+1 (y_m)
Jet real_partial(const Jet& f, int r, int n) {
  const int m = r / 2;
  if (r % 2 == 0) return f.partial(m) + f.partial(n + m);
  return (f.partial(m) - f.partial(n + m)) * Jet(kI);
}

// Real components of d/dz_m (m < n) and d/dzbar_{m-n}.
Eigen::MatrixXcd coordinate_vectors(int n) {
  Eigen::MatrixXcd f = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  for (int m = 0; m < n; ++m) {
    f(m, 2 * m) = 0.5;
    f(m, 2 * m + 1) = Complex{0.0, -0.5};
    f(n + m, 2 * m) = 0.5;
    f(n + m, 2 * m + 1) = Complex{0.0, 0.5};
  }
  return f;
}

CTensor contract(const CTensor& r, const Eigen::MatrixXcd& f1, const Eigen::MatrixXcd& f2,
                 const Eigen::MatrixXcd& f3, const Eigen::MatrixXcd& f4) {
  const int N = r.shape()[0];
  CTensor a({N, N, N, N}), b({N, N, N, N});
  // slot 4
  for (int p = 0; p < N; ++p)
    for (int q = 0; q < N; ++q)
      for (int s = 0; s < N; ++s)
        for (int d = 0; d < N; ++d) {
          Complex acc{};
          for (int t = 0; t < N; ++t) acc += f4(d, t) * r(p, q, s, t);
          a(p, q, s, d) = acc;
        }
  for (int p = 0; p < N; ++p)
    for (int q = 0; q < N; ++q)
      for (int c = 0; c < N; ++c)
        for (int d = 0; d < N; ++d) {
          Complex acc{};
          for (int t = 0; t < N; ++t) acc += f3(c, t) * a(p, q, t, d);
          b(p, q, c, d) = acc;
        }
  for (int p = 0; p < N; ++p)
    for (int bb = 0; bb < N; ++bb)
      for (int c = 0; c < N; ++c)
        for (int d = 0; d < N; ++d) {
          Complex acc{};
          for (int t = 0; t < N; ++t) acc += f2(bb, t) * b(p, t, c, d);
          a(p, bb, c, d) = acc;
        }
  for (int aa = 0; aa < N; ++aa)
    for (int bb = 0; bb < N; ++bb)
      for (int c = 0; c < N; ++c)
        for (int d = 0; d < N; ++d) {
          Complex acc{};
          for (int t = 0; t < N; ++t) acc += f1(aa, t) * a(t, bb, c, d);
          b(aa, bb, c, d) = acc;
        }
  return b;
}

}  // namespace

Complex RiemannData::inner(const Eigen::VectorXcd& x, const Eigen::VectorXcd& y) const {
  const int N = 2 * n;
  Complex s{};
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) s += x(a) * h(a, b).value() * y(b);
  return s;
}

Complex RiemannData::curvature(const Eigen::VectorXcd& x, const Eigen::VectorXcd& y, const Eigen::VectorXcd& z,
                               const Eigen::VectorXcd& w) const {
  const int N = 2 * n;
  Complex s{};
  for (int a = 0; a < N; ++a) {
    if (x(a) == Complex{}) continue;
    for (int b = 0; b < N; ++b) {
      if (y(b) == Complex{}) continue;
      for (int c = 0; c < N; ++c) {
        if (z(c) == Complex{}) continue;
        for (int d = 0; d < N; ++d) s += x(a) * y(b) * z(c) * w(d) * Rreal(a, b, c, d);
      }
    }
  }
  return s;
}

Complex RiemannData::ricci(const Eigen::VectorXcd& x, const Eigen::VectorXcd& y) const {
  const int N = 2 * n;
  Complex s{};
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) {
      const Complex hi = hinv(a, b).value();
      if (hi == Complex{}) continue;
      for (int q = 0; q < N; ++q)
        for (int r = 0; r < N; ++r) s += hi * x(q) * y(r) * Rreal(a, q, r, b);
    }
  return s;
}

double RiemannData::scalar() const {
  const int N = 2 * n;
  Complex s{};
  for (int q = 0; q < N; ++q)
    for (int r = 0; r < N; ++r) {
      const Complex hi = hinv(q, r).value();
      if (hi == Complex{}) continue;
      Eigen::VectorXcd eq = Eigen::VectorXcd::Zero(N), er = Eigen::VectorXcd::Zero(N);
      eq(q) = 1.0;
      er(r) = 1.0;
      s += hi * ricci(eq, er);
    }
  return s.real();
}

Eigen::VectorXcd RiemannData::J(const Eigen::VectorXcd& v) const {
  Eigen::VectorXcd out(v.size());
  for (int m = 0; m < n; ++m) {
    out(2 * m) = -v(2 * m + 1);
    out(2 * m + 1) = v(2 * m);
  }
  return out;
}

Eigen::VectorXcd RiemannData::from_frame(const Eigen::VectorXcd& coeffs) const {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(2 * n);
  for (int a = 0; a < n; ++a) out += coeffs(a) * frame_real.row(a).transpose();
  return out;
}

double RiemannData::sectional(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const {
  const Eigen::VectorXcd uc = u.cast<Complex>(), vc = v.cast<Complex>();
  const double uu = inner(uc, uc).real(), vv = inner(vc, vc).real(), uv = inner(uc, vc).real();
  return -curvature(uc, vc, uc, vc).real() / (uu * vv - uv * uv);
}

RiemannData riemann_in_frame(const JetMatrix& g, const JetMatrix& P) {
  RiemannData r;
  const int n = g.rows();
  const int N = 2 * n;
  r.n = n;
  r.h = JetMatrix(N, N, N);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Jet re = real_part(g(i, j)) * 2.0;
      const Jet im = imag_part(g(i, j)) * 2.0;
      r.h(2 * i, 2 * j) = re;
      r.h(2 * i + 1, 2 * j + 1) = re;
      r.h(2 * i, 2 * j + 1) = im;
      r.h(2 * i + 1, 2 * j) = -im;
    }
  r.hinv = inverse(r.h);

  JTensor dh({N, N, N});
  for (int d = 0; d < N; ++d)
    for (int b = 0; b < N; ++b)
      for (int c = 0; c < N; ++c) dh(d, b, c) = real_partial(r.h(b, c), d, n);

  r.Gamma = JTensor({N, N, N});
  for (int b = 0; b < N; ++b)
    for (int c = 0; c < N; ++c) {
      std::vector<Jet> lower(static_cast<std::size_t>(N));
      for (int d = 0; d < N; ++d) lower[static_cast<std::size_t>(d)] = (dh(b, d, c) + dh(c, d, b) - dh(d, b, c)) * 0.5;
      for (int a = 0; a < N; ++a) {
        Jet acc(0.0);
        for (int d = 0; d < N; ++d) acc += r.hinv(a, d) * lower[static_cast<std::size_t>(d)];
        r.Gamma(a, b, c) = acc;
      }
    }

  CTensor dG({N, N, N, N});
  CTensor G({N, N, N});
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b)
      for (int c = 0; c < N; ++c) {
        G(a, b, c) = r.Gamma(a, b, c).value();
        for (int e = 0; e < N; ++e) dG(e, a, b, c) = real_partial(r.Gamma(a, b, c), e, n).value();
      }

  // R^a_{bcd}: R(d_c, d_d) d_b = R^a_{bcd} d_a
  CTensor up({N, N, N, N});
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b)
      for (int c = 0; c < N; ++c)
        for (int d = 0; d < N; ++d) {
          Complex s = dG(c, a, d, b) - dG(d, a, c, b);
          for (int e = 0; e < N; ++e) s += G(a, c, e) * G(e, d, b) - G(a, d, e) * G(e, c, b);
          up(a, b, c, d) = s;
        }
  r.Rreal = CTensor({N, N, N, N});
  for (int c = 0; c < N; ++c)
    for (int d = 0; d < N; ++d)
      for (int b = 0; b < N; ++b)
        for (int w = 0; w < N; ++w) {
          Complex s{};
          for (int a = 0; a < N; ++a) s += r.h(w, a).value() * up(a, b, c, d);
          r.Rreal(c, d, b, w) = s;
        }

  // frame vectors as jets in real components
  std::vector<Jet> comp(static_cast<std::size_t>(N * N), Jet(0.0));
  auto cref = [&](int s, int t) -> Jet& { return comp[static_cast<std::size_t>(s * N + t)]; };
  for (int a = 0; a < n; ++a)
    for (int m = 0; m < n; ++m) {
      cref(a, 2 * m) = P(a, m) * 0.5;
      cref(a, 2 * m + 1) = P(a, m) * Complex{0.0, -0.5};
      cref(n + a, 2 * m) = cref(a, 2 * m).conj();
      cref(n + a, 2 * m + 1) = cref(a, 2 * m + 1).conj();
    }
  r.frame_real = Eigen::MatrixXcd(N, N);
  for (int s = 0; s < N; ++s)
    for (int t = 0; t < N; ++t) r.frame_real(s, t) = cref(s, t).value();

  const Eigen::MatrixXcd coords = coordinate_vectors(n);
  r.R = contract(r.Rreal, r.frame_real, r.frame_real, r.frame_real, r.frame_real);
  r.Rmixed = contract(r.Rreal, coords, coords, r.frame_real, r.frame_real);

  // nabla_{d/dw_m} F_s in real components
  Tensor<Complex> nab({N, N, N});
  for (int s = 0; s < N; ++s)
    for (int m = 0; m < N; ++m)
      for (int t = 0; t < N; ++t) {
        const Jet& c = cref(s, t);
        Complex v = c.dirs() == 0 ? Complex{} : c.d1(m);
        for (int q = 0; q < N; ++q) {
          if (coords(m, q) == Complex{}) continue;
          for (int p = 0; p < N; ++p) v += coords(m, q) * cref(s, p).value() * G(t, q, p);
        }
        nab(s, m, t) = v;
      }
  auto pair = [&](int s, int m, int target) {
    Eigen::VectorXcd x(N);
    for (int t = 0; t < N; ++t) x(t) = nab(s, m, t);
    return r.inner(x, r.frame_real.row(target).transpose());
  };
  r.theta1.assign(static_cast<std::size_t>(n * n), Form(n));
  r.theta2.assign(static_cast<std::size_t>(n * n), Form(n));
  r.Theta2.assign(static_cast<std::size_t>(n * n), Form(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Form t1(n), t2(n), T2(n);
      for (int m = 0; m < N; ++m) {
        t1 += Jet(pair(i, m, n + j)) * Form::basis(n, m);
        t2 += Jet(pair(n + i, m, n + j)) * Form::basis(n, m);
        for (int q = m + 1; q < N; ++q) T2 += Jet(r.Rmixed(m, q, n + i, n + j)) * wedge(Form::basis(n, m), Form::basis(n, q));
      }
      r.theta1[static_cast<std::size_t>(i * n + j)] = t1.values();
      r.theta2[static_cast<std::size_t>(i * n + j)] = t2.values();
      r.Theta2[static_cast<std::size_t>(i * n + j)] = T2.values();
    }
  return r;
}

RiemannData riemann_at(const MetricField& metric, std::span<const Complex> point) {
  const JetMatrix g = eval_metric(metric, point);
  return riemann_in_frame(g, unitary_frame(g));
}

RiemannSymmetry riemann_symmetries(const RiemannData& r) {
  const int N = 2 * r.n;
  RiemannSymmetry s;
  const CTensor& R = r.Rreal;
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b)
      for (int c = 0; c < N; ++c)
        for (int d = 0; d < N; ++d) {
          s.antisym_first = std::max(s.antisym_first, std::abs(R(a, b, c, d) + R(b, a, c, d)));
          s.antisym_last = std::max(s.antisym_last, std::abs(R(a, b, c, d) + R(a, b, d, c)));
          s.pair_swap = std::max(s.pair_swap, std::abs(R(a, b, c, d) - R(c, d, a, b)));
          s.bianchi = std::max(s.bianchi, std::abs(R(a, b, c, d) + R(b, c, a, d) + R(c, a, b, d)));
        }
  return s;
}

double gray_vanishing(const RiemannData& r) {
  const int n = r.n;
  double m = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) m = std::max(m, std::abs(r.R(i, j, k, l)));
  return m;
}

double theta2_norm(const RiemannData& r) {
  const int n = r.n;
  double m = 0.0;
  for (int a = 0; a < 2 * n; ++a)
    for (int b = 0; b < 2 * n; ++b)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m = std::max(m, std::abs(r.R(a, b, n + i, n + j)));
  return m;
}

double gk_blocks_norm(const RiemannData& r) {
  const int n = r.n;
  double m = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          m = std::max(m, std::abs(r.R(i, j, n + k, n + l)));
          m = std::max(m, std::abs(r.R(i, n + j, n + k, n + l)));
        }
  return m;
}

double gk_bianchi_symmetry(const RiemannData& r) {
  const int n = r.n;
  double m = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) m = std::max(m, std::abs(r.R(i, n + j, k, n + l) - r.R(k, n + j, i, n + l)));
  return m;
}

Form theta2_from_torsion(const ChernData& c, int i, int j) {
  Form f(c.n);
  for (int k = 0; k < c.n; ++k) f += c.T(k, i, j).conj() * c.phi(k);
  return f;
}

Form gamma_from_torsion(const ChernData& c, int i, int j) {
  Form f(c.n);
  for (int k = 0; k < c.n; ++k) {
    f += c.T(j, i, k) * c.phi(k);
    f -= c.T(i, j, k).conj() * c.phi(k).conj();
  }
  return f;
}

std::vector<Form> Theta2_from_torsion(const ChernData& c) {
  const int n = c.n;
  std::vector<Form> t2, t1;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      t2.push_back(theta2_from_torsion(c, i, j));
      t1.push_back((c.theta_form(i, j) + gamma_from_torsion(c, i, j)).values());
    }
  auto at = [n](const std::vector<Form>& v, int i, int j) -> const Form& {
    return v[static_cast<std::size_t>(i * n + j)];
  };
  std::vector<Form> out;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Form f = at(t2, i, j).d();
      for (int m = 0; m < n; ++m) {
        f -= wedge(at(t2, i, m).values(), at(t1, m, j));
        f -= wedge(at(t1, i, m).conj(), at(t2, m, j).values());
      }
      out.push_back(f);
    }
  return out;
}

Theta2Check theta2_gamma_check(const ChernData& c, const RiemannData& r) {
  const int n = c.n;
  Theta2Check out;
  const std::vector<Form> T2 = Theta2_from_torsion(c);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      out.theta2_formula =
          std::max(out.theta2_formula, (r.th2(i, j) - theta2_from_torsion(c, i, j).values()).max_abs());
      out.theta2_01_part = std::max(out.theta2_01_part, r.th2(i, j).part(0, 1).max_abs());
      const Form gamma = r.th1(i, j) - c.theta_form(i, j).values();
      out.gamma_formula = std::max(out.gamma_formula, (gamma - gamma_from_torsion(c, i, j).values()).max_abs());
      out.Theta2_routes =
          std::max(out.Theta2_routes, (T2[static_cast<std::size_t>(i * n + j)] - r.Th2(i, j)).max_abs());
      out.Theta2_02_part = std::max(out.Theta2_02_part, r.Th2(i, j).part(0, 2).max_abs());
    }
  return out;
}

Form sigma1_form(const ChernData& c, const RiemannData& r) {
  const int n = c.n;
  Form s(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Form gij = r.th1(i, j) - c.theta_form(i, j).values();
      const Form gji = r.th1(j, i) - c.theta_form(j, i).values();
      s += wedge(gij.part(1, 0), gji.part(0, 1));
    }
  return Jet(-kI) * s;
}

Form sigma2_form(const RiemannData& r) {
  const int n = r.n;
  Form s(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s += wedge(r.th2(i, j).conj(), r.th2(j, i));
  return Jet(kI) * s;
}

double sigma1_min_eigenvalue(const ChernData& c, const RiemannData& r) {
  return min_eigenvalue_11(sigma1_form(c, r), c.frame);
}

double sigma2_min_eigenvalue(const ChernData& c, const RiemannData& r) {
  return min_eigenvalue_11(sigma2_form(r), c.frame);
}

double dsigma2_check(const ChernData& c, const RiemannData& r) {
  const int n = c.n;
  std::vector<Form> t2;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t2.push_back(theta2_from_torsion(c, i, j));
  Form sigma(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      sigma += wedge(t2[static_cast<std::size_t>(i * n + j)].conj(), t2[static_cast<std::size_t>(j * n + i)]);
  const Form lhs = Jet(kI) * sigma.d();
  Form rhs(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      rhs += wedge(r.Th2(i, j).conj(), r.th2(j, i));
      rhs -= wedge(r.th2(i, j).conj(), r.Th2(j, i));
    }
  return (lhs - Jet(kI) * rhs).max_abs();
}

}  // namespace hermitlab
