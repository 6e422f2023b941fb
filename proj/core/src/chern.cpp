#include "hermitlab/chern.hpp"

#include <algorithm>
#include <cmath>

#include "hermitlab/error.hpp"

namespace hermitlab {

namespace {

constexpr Complex kI{0.0, 1.0};

double form_max(const Form& f) { return f.max_abs(); }

// T'^c_ab = sum L(i,c) T^i_kj P(a,k) P(b,j), evaluated stagewise.
template <class S, class M>
Tensor<S> change_frame(const Tensor<S>& t, const M& P, const M& L, int n) {
  Tensor<S> x({n, n, n}, S(0.0));
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < n; ++a)
      for (int j = 0; j < n; ++j) {
        S acc(0.0);
        for (int k = 0; k < n; ++k) acc += P(a, k) * t(i, k, j);
        x(i, a, j) = acc;
      }
  Tensor<S> y({n, n, n}, S(0.0));
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        S acc(0.0);
        for (int j = 0; j < n; ++j) acc += P(b, j) * x(i, a, j);
        y(i, a, b) = acc;
      }
  Tensor<S> out({n, n, n}, S(0.0));
  for (int c = 0; c < n; ++c)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        S acc(0.0);
        for (int i = 0; i < n; ++i) acc += L(i, c) * y(i, a, b);
        out(c, a, b) = acc;
      }
  return out;
}

}  // namespace

Complex ChernData::theta_on_e(int i, int j, int l) const {
  Complex s{};
  for (int m = 0; m < n; ++m) s += frame(l, m) * A[static_cast<std::size_t>(m)](i, j).value();
  return s;
}

Complex ChernData::theta_on_ebar(int i, int j, int l) const {
  Complex s{};
  for (int m = 0; m < n; ++m) s += std::conj(frame(l, m)) * B[static_cast<std::size_t>(m)](i, j).value();
  return s;
}

Complex ChernData::e(int l, const Jet& f) const {
  if (f.dirs() == 0) return {};
  Complex s{};
  for (int m = 0; m < n; ++m) s += frame(l, m) * f.d1(m);
  return s;
}

Complex ChernData::ebar(int l, const Jet& f) const {
  if (f.dirs() == 0) return {};
  Complex s{};
  for (int m = 0; m < n; ++m) s += std::conj(frame(l, m)) * f.d1(n + m);
  return s;
}

Eigen::VectorXcd ChernData::e_vec(int a) const {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(2 * n);
  v.head(n) = frame.row(a).transpose();
  return v;
}

Eigen::VectorXcd ChernData::ebar_vec(int a) const {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(2 * n);
  v.tail(n) = frame.row(a).transpose().conjugate();
  return v;
}

Form ChernData::phi(int a) const {
  Form f(n);
  for (int m = 0; m < n; ++m) f += L(m, a) * Form::dz(n, m);
  return f;
}

Form ChernData::omega() const {
  Form f(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) f += (Jet(kI) * g(i, j)) * wedge(Form::dz(n, i), Form::dzbar(n, j));
  return f;
}

Form ChernData::tau(int k) const {
  Form f(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) f += T(k, a, b) * wedge(phi(a), phi(b));
  return f;
}

Form ChernData::theta_form(int i, int j) const {
  Form f(n);
  for (int m = 0; m < n; ++m) {
    f += A[static_cast<std::size_t>(m)](i, j) * Form::dz(n, m);
    f += B[static_cast<std::size_t>(m)](i, j) * Form::dzbar(n, m);
  }
  return f;
}

Form ChernData::curvature_form(int i, int j) const {
  Form f(n);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) f += Jet(Rh(k, l, i, j)) * wedge(phi(k), phi(l).conj());
  return f;
}

Form ChernData::eta_form() const {
  Form f(n);
  for (int j = 0; j < n; ++j) {
    Jet c(0.0);
    for (int i = 0; i < n; ++i) c += T(i, i, j);
    f += c * phi(j);
  }
  return f;
}

double ChernData::theta_max() const {
  double m = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) {
        m = std::max(m, std::abs(theta_on_e(i, j, l)));
        m = std::max(m, std::abs(theta_on_ebar(i, j, l)));
      }
  return m;
}

JetMatrix unitary_frame(const JetMatrix& g) { return inverse(cholesky(g)); }

ChernData chern_in_frame(const JetMatrix& g, std::span<const Complex> point, const JetMatrix& P) {
  ChernData d;
  const int n = g.rows();
  d.n = n;
  d.point.assign(point.begin(), point.end());
  d.g = g;
  const JetMatrix ginv = inverse(g);
  for (int m = 0; m < n; ++m) d.C.push_back(g.partial(m) * ginv);

  d.theta_curv_hol = CTensor({n, n, n, n});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) d.theta_curv_hol(i, j, k, l) = -d.C[static_cast<std::size_t>(k)](i, j).d1(n + l);

  d.torsion_hol = JTensor({n, n, n});
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j)
        d.torsion_hol(i, k, j) =
            (d.C[static_cast<std::size_t>(k)](j, i) - d.C[static_cast<std::size_t>(j)](k, i)) * 0.5;

  d.P = P;
  d.L = inverse(P);
  d.frame = P.values();
  for (int m = 0; m < n; ++m) {
    d.A.push_back(P * d.C[static_cast<std::size_t>(m)] * d.L + P.partial(m) * d.L);
    d.B.push_back(P.partial(n + m) * d.L);
  }

  d.T = change_frame(d.torsion_hol, d.P, d.L, n);

  // Theta in the frame: P Theta_hol L, then evaluated on (e_k, ebar_l)
  const Eigen::MatrixXcd& pv = d.frame;
  const Eigen::MatrixXcd lv = d.L.values();
  CTensor tf({n, n, n, n});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int m = 0; m < n; ++m)
        for (int q = 0; q < n; ++q) {
          Complex s{};
          for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) s += pv(i, a) * d.theta_curv_hol(a, b, m, q) * lv(b, j);
          tf(i, j, m, q) = s;
        }
  d.Rh = CTensor({n, n, n, n});
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          Complex s{};
          for (int m = 0; m < n; ++m)
            for (int q = 0; q < n; ++q) s += tf(i, j, m, q) * pv(k, m) * std::conj(pv(l, q));
          d.Rh(k, l, i, j) = s;
        }

  d.eta = CTensor({n});
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) d.eta(j) += d.T(i, i, j).value();

  d.covT = CTensor({n, n, n, n});
  d.covTbar = CTensor({n, n, n, n});
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) {
          Complex h = d.e(l, d.T(k, i, j));
          Complex a = d.ebar(l, d.T(k, i, j));
          for (int m = 0; m < n; ++m) {
            h += -d.theta_on_e(i, m, l) * d.T(k, m, j).value() - d.theta_on_e(j, m, l) * d.T(k, i, m).value() +
                 d.theta_on_e(m, k, l) * d.T(m, i, j).value();
            a += -d.theta_on_ebar(i, m, l) * d.T(k, m, j).value() -
                 d.theta_on_ebar(j, m, l) * d.T(k, i, m).value() + d.theta_on_ebar(m, k, l) * d.T(m, i, j).value();
          }
          d.covT(k, i, j, l) = h;
          d.covTbar(k, i, j, l) = a;
        }
  return d;
}

ChernData chern_at(const MetricField& metric, std::span<const Complex> point) {
  const JetMatrix g = eval_metric(metric, point);
  return chern_in_frame(g, point, unitary_frame(g));
}

CTensor transform_torsion(const CTensor& T, const Eigen::MatrixXcd& A) {
  const int n = static_cast<int>(A.rows());
  const Eigen::MatrixXcd Ainv = A.inverse();
  return change_frame(T, A, Ainv, n);
}

void raw_torsion_derivatives(const ChernData& d, CTensor& dT, CTensor& dTbar) {
  const int n = d.n;
  dT = CTensor({n, n, n, n});
  dTbar = CTensor({n, n, n, n});
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) {
          dT(k, i, j, l) = d.e(l, d.T(k, i, j));
          dTbar(k, i, j, l) = d.ebar(l, d.T(k, i, j));
        }
}

NormalFrame normal_frame_at(const MetricField& metric, std::span<const Complex> point) {
  const ChernData u = chern_at(metric, point);
  const int n = u.n;
  JetMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Jet e = Jet::constant(i == j ? 1.0 : 0.0, 2 * n);
      for (int m = 0; m < n; ++m) {
        e.set_d1(m, -u.A[static_cast<std::size_t>(m)](i, j).value());
        e.set_d1(n + m, -u.B[static_cast<std::size_t>(m)](i, j).value());
      }
      a(i, j) = e;
    }
  NormalFrame out;
  out.A = a;
  out.data = chern_in_frame(u.g, point, a * u.P);
  return out;
}

double bianchi_residual(const ChernData& d) {
  const int n = d.n;
  std::vector<Form> tau(static_cast<std::size_t>(n), Form(n));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j) tau[static_cast<std::size_t>(i)] += d.torsion_hol(i, k, j) * wedge(Form::dz(n, k), Form::dz(n, j));
  auto theta = [&](int i, int j) {
    Form f(n);
    for (int m = 0; m < n; ++m) f += d.C[static_cast<std::size_t>(m)](i, j) * Form::dz(n, m);
    return f;
  };
  auto curv = [&](int i, int j) {
    Form f(n);
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) f += Jet(d.theta_curv_hol(i, j, k, l)) * wedge(Form::dz(n, k), Form::dzbar(n, l));
    return f;
  };
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    Form r = tau[static_cast<std::size_t>(i)].d();
    for (int j = 0; j < n; ++j) {
      r += wedge(theta(j, i).values(), tau[static_cast<std::size_t>(j)].values());
      r -= wedge(curv(j, i), Form::dz(n, j));
    }
    worst = std::max(worst, form_max(r));
  }
  return worst;
}

double curvature_type_residual(const ChernData& d) {
  const int n = d.n;
  auto theta = [&](int i, int j) {
    Form f(n);
    for (int m = 0; m < n; ++m) f += d.C[static_cast<std::size_t>(m)](i, j) * Form::dz(n, m);
    return f;
  };
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Form r = theta(i, j).d();
      for (int m = 0; m < n; ++m) r -= wedge(theta(i, m).values(), theta(m, j).values());
      worst = std::max(worst, form_max(r.part(2, 0)));
      worst = std::max(worst, form_max(r.part(0, 2)));
    }
  return worst;
}

double curvature_skew_residual(const ChernData& d) {
  const int n = d.n;
  double worst = 0.0;
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          worst = std::max(worst, std::abs(d.Rh(k, l, i, j) - std::conj(d.Rh(l, k, j, i))));
  return worst;
}

double kahler_like_wedge(const ChernData& d) {
  const int n = d.n;
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    Form r(n);
    for (int j = 0; j < n; ++j) r += wedge(d.curvature_form(j, i), d.phi(j).values());
    worst = std::max(worst, form_max(r));
  }
  return worst;
}

double kahler_like_symmetry(const ChernData& d) {
  const int n = d.n;
  double worst = 0.0;
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) worst = std::max(worst, std::abs(d.Rh(k, l, i, j) - d.Rh(i, l, k, j)));
  return worst;
}

namespace {

Form ddbar_omega(const ChernData& d) { return Jet(kI) * d.omega().delbar().del(); }

Form sigma_form(const ChernData& d) {
  Form s(d.n);
  for (int i = 0; i < d.n; ++i) {
    const Form t = d.tau(i).values();
    s += wedge(t, t.conj());
  }
  return s;
}

}  // namespace

double ddbar_omega_residual(const ChernData& d) {
  const int n = d.n;
  Form r = ddbar_omega(d) - sigma_form(d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      r -= wedge(wedge(d.phi(i).values(), d.curvature_form(i, j)), d.phi(j).values().conj());
  return form_max(r);
}

double ddbar_omega_sigma_residual(const ChernData& d) {
  return form_max(ddbar_omega(d) - sigma_form(d));
}

double balanced_identity_residual(const ChernData& d) {
  const Form w = power(d.omega(), d.n - 1);
  const Form r = w.del() + Jet(2.0) * wedge(d.eta_form().values(), w.values());
  return form_max(r);
}

double delbar_eta(const ChernData& d) { return form_max(d.eta_form().delbar()); }

double torsion_derivative_residual(const ChernData& d) {
  const int n = d.n;
  double worst = 0.0;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) {
          const Complex lhs = 2.0 * d.covTbar(k, i, j, l);
          const Complex rhs = d.Rh(j, l, i, k) - d.Rh(i, l, j, k);
          worst = std::max(worst, std::abs(lhs - rhs));
        }
  return worst;
}

double torsion_norm(const ChernData& d) { return max_abs(values(d.T)); }

double eta_norm(const ChernData& d) { return max_abs(d.eta); }

double curvature_norm(const ChernData& d) { return max_abs(d.Rh); }

}  // namespace hermitlab
