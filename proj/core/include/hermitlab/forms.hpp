#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <span>

#include "hermitlab/jet.hpp"

namespace hermitlab {

/// Exterior algebra value at a point over the 2n directions
/// (dz_1..dz_n, dzbar_1..dzbar_n), with jet coefficients.
///
/// A basis monomial dw_{a1}^..^dw_{ak} with a1 < .. < ak is keyed by the
/// bitmask of its directions. Forms may be inhomogeneous.
class Form {
 public:
  using Mask = std::uint32_t;

  Form() = default;
  explicit Form(int n) : n_(n) {}

  static Form scalar(int n, const Jet& f);
  /// dw_direction for a direction in [0, 2n).
  static Form basis(int n, int direction);
  static Form dz(int n, int k) { return basis(n, k); }
  static Form dzbar(int n, int k) { return basis(n, n + k); }
  /// Linear combination sum_a c_a dw_a of the basis one-forms.
  static Form one_form(int n, std::span<const Jet> coeffs);

  int n() const noexcept { return n_; }
  int dims() const noexcept { return 2 * n_; }
  const std::map<Mask, Jet>& terms() const noexcept { return terms_; }
  Jet coefficient(Mask m) const;
  void add_term(Mask m, const Jet& c);

  /// Degree of a homogeneous form; -1 when mixed, 0 for the zero form.
  int degree() const;

  Form& operator+=(const Form& b);
  Form& operator-=(const Form& b);
  Form operator-() const;

  /// Exterior derivative and its (1,0) / (0,1) parts. Each lowers the
  /// coefficient jet order by one.
  Form d() const;
  Form del() const;
  Form delbar() const;

  /// Complex conjugate form.
  Form conj() const;
  /// Component of type (p, q).
  Form part(int p, int q) const;
  /// Coefficients reduced to their values.
  Form values() const;

  /// Alternating evaluation on vectors given by their 2n components in the
  /// (d/dz, d/dzbar) basis: dw_I(v_1..v_k) = det[dw_{I_s}(v_r)].
  Complex evaluate(std::span<const Eigen::VectorXcd> vectors) const;
  Complex evaluate(const Eigen::VectorXcd& x, const Eigen::VectorXcd& y) const;

  /// Largest coefficient magnitude (values only).
  double max_abs() const;

 private:
  int n_ = 0;
  std::map<Mask, Jet> terms_;
};

Form operator+(const Form& a, const Form& b);
Form operator-(const Form& a, const Form& b);
Form operator*(const Jet& s, const Form& a);
Form wedge(const Form& a, const Form& b);
Form operator^(const Form& a, const Form& b);

/// Sign of dw_A ^ dw_B relative to dw_{A|B}; zero when they overlap.
int wedge_sign(Form::Mask a, Form::Mask b);

/// Exterior power a^k (k >= 0; a^0 = 1).
Form power(const Form& a, int k);

/// Coefficient matrix H of a (1,1) form written as
/// sqrt(-1) sum H_{kl} phi_k ^ conj(phi_l), where phi is the coframe dual to
/// the frame whose k-th vector has (1,0) components frame.row(k).
Eigen::MatrixXcd hermitian_coefficients(const Form& f, const Eigen::MatrixXcd& frame);

/// Smallest eigenvalue of the Hermitian part of hermitian_coefficients.
double min_eigenvalue_11(const Form& f, const Eigen::MatrixXcd& frame);

}  // namespace hermitlab
