#include "hermitlab/forms.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>

#include "hermitlab/error.hpp"

namespace hermitlab {

namespace {

bool is_zero_constant(const Jet& j) { return j.dirs() == 0 && j.value() == Complex{}; }

}  // namespace

int wedge_sign(Form::Mask a, Form::Mask b) {
  if (a & b) return 0;
  int swaps = 0;
  for (Form::Mask rest = b; rest; rest &= rest - 1) {
    const Form::Mask low = rest & (~rest + 1);
    // bits of a above this bit of b must hop over it
    swaps += std::popcount(a & ~(low | (low - 1)));
  }
  return swaps % 2 ? -1 : 1;
}

Form Form::scalar(int n, const Jet& f) {
  Form out(n);
  out.add_term(0, f);
  return out;
}

Form Form::basis(int n, int direction) {
  if (direction < 0 || direction >= 2 * n) throw InvalidInput("form direction out of range");
  Form out(n);
  out.add_term(Mask{1} << direction, Jet(1.0));
  return out;
}

Form Form::one_form(int n, std::span<const Jet> coeffs) {
  Form out(n);
  for (int a = 0; a < 2 * n && a < static_cast<int>(coeffs.size()); ++a) {
    if (!is_zero_constant(coeffs[static_cast<std::size_t>(a)])) out.add_term(Mask{1} << a, coeffs[static_cast<std::size_t>(a)]);
  }
  return out;
}

Jet Form::coefficient(Mask m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Jet() : it->second;
}

void Form::add_term(Mask m, const Jet& c) {
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) it->second += c;
}

int Form::degree() const {
  int deg = 0;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    const int d = std::popcount(m);
    if (first) {
      deg = d;
      first = false;
    } else if (d != deg) {
      return -1;
    }
  }
  return deg;
}

Form& Form::operator+=(const Form& b) {
  if (n_ == 0) n_ = b.n_;
  for (const auto& [m, c] : b.terms_) add_term(m, c);
  return *this;
}

Form& Form::operator-=(const Form& b) {
  if (n_ == 0) n_ = b.n_;
  for (const auto& [m, c] : b.terms_) add_term(m, -c);
  return *this;
}

Form Form::operator-() const {
  Form out(n_);
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
  return out;
}

namespace {

Form differentiate(const Form& f, int first, int last) {
  Form out(f.n());
  for (const auto& [m, c] : f.terms()) {
    if (c.order() < 1) throw InsufficientJetOrder("exterior derivative of a form with order-0 coefficients");
    if (c.dirs() == 0) continue;
    for (int k = first; k < last; ++k) {
      const Form::Mask bit = Form::Mask{1} << k;
      if (m & bit) continue;
      const int s = wedge_sign(bit, m);
      Jet dc = c.partial(k);
      out.add_term(m | bit, s > 0 ? dc : -dc);
    }
  }
  return out;
}

}  // namespace

Form Form::d() const { return differentiate(*this, 0, 2 * n_); }
Form Form::del() const { return differentiate(*this, 0, n_); }
Form Form::delbar() const { return differentiate(*this, n_, 2 * n_); }

Form Form::conj() const {
  Form out(n_);
  const Mask low = (Mask{1} << n_) - 1;
  for (const auto& [m, c] : terms_) {
    const Mask swapped = ((m & low) << n_) | (m >> n_);
    // the image is dzbar_Z ^ dz_Zbar; move the dz block to the front
    const int s = wedge_sign((m & low) << n_, m >> n_);
    const Jet cc = c.conj();
    out.add_term(swapped, s > 0 ? cc : -cc);
  }
  return out;
}

Form Form::part(int p, int q) const {
  Form out(n_);
  const Mask low = (Mask{1} << n_) - 1;
  for (const auto& [m, c] : terms_) {
    if (std::popcount(m & low) == p && std::popcount(m & ~low) == q) out.terms_.emplace(m, c);
  }
  return out;
}

Form Form::values() const {
  Form out(n_);
  for (const auto& [m, c] : terms_) {
    Jet v(c.value());
    v.set_order(0);
    out.terms_.emplace(m, v);
  }
  return out;
}

Complex Form::evaluate(std::span<const Eigen::VectorXcd> vectors) const {
  const int k = static_cast<int>(vectors.size());
  Complex sum{};
  for (const auto& [m, c] : terms_) {
    if (std::popcount(m) != k) continue;
    if (k == 0) {
      sum += c.value();
      continue;
    }
    Eigen::MatrixXcd a(k, k);
    int s = 0;
    for (int dir = 0; dir < 2 * n_; ++dir) {
      if (!(m & (Mask{1} << dir))) continue;
      for (int r = 0; r < k; ++r) a(r, s) = vectors[static_cast<std::size_t>(r)](dir);
      ++s;
    }
    sum += c.value() * a.determinant();
  }
  return sum;
}

Complex Form::evaluate(const Eigen::VectorXcd& x, const Eigen::VectorXcd& y) const {
  const std::array<Eigen::VectorXcd, 2> v{x, y};
  return evaluate(std::span<const Eigen::VectorXcd>(v));
}

double Form::max_abs() const {
  double m = 0.0;
  for (const auto& [mask, c] : terms_) m = std::max(m, std::abs(c.value()));
  return m;
}

Form operator+(const Form& a, const Form& b) {
  Form out = a;
  out += b;
  return out;
}

Form operator-(const Form& a, const Form& b) {
  Form out = a;
  out -= b;
  return out;
}

Form operator*(const Jet& s, const Form& a) {
  Form out(a.n());
  for (const auto& [m, c] : a.terms()) out.add_term(m, s * c);
  return out;
}

Form wedge(const Form& a, const Form& b) {
  Form out(std::max(a.n(), b.n()));
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      const int s = wedge_sign(ma, mb);
      if (s == 0) continue;
      const Jet p = ca * cb;
      out.add_term(ma | mb, s > 0 ? p : -p);
    }
  }
  return out;
}

Form operator^(const Form& a, const Form& b) { return wedge(a, b); }

Form power(const Form& a, int k) {
  Form out = Form::scalar(a.n(), Jet(1.0));
  for (int i = 0; i < k; ++i) out = wedge(out, a);
  return out;
}

Eigen::MatrixXcd hermitian_coefficients(const Form& f, const Eigen::MatrixXcd& frame) {
  const int n = f.n();
  Eigen::MatrixXcd h(n, n);
  for (int k = 0; k < n; ++k) {
    Eigen::VectorXcd ek = Eigen::VectorXcd::Zero(2 * n);
    ek.head(n) = frame.row(k).transpose();
    for (int l = 0; l < n; ++l) {
      Eigen::VectorXcd el = Eigen::VectorXcd::Zero(2 * n);
      el.tail(n) = frame.row(l).transpose().conjugate();
      h(k, l) = Complex{0.0, -1.0} * f.evaluate(ek, el);
    }
  }
  return h;
}

double min_eigenvalue_11(const Form& f, const Eigen::MatrixXcd& frame) {
  const Eigen::MatrixXcd h = hermitian_coefficients(f, frame);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(0.5 * (h + h.adjoint()), Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff();
}

}  // namespace hermitlab
