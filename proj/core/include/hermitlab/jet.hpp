#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace hermitlab {

using Complex = std::complex<double>;

/// A complex scalar together with its first and second Wirtinger
/// derivatives at a point of C^n.
///
/// Directions are ordered (d/dz_1 .. d/dz_n, d/dzbar_1 .. d/dzbar_n), so a jet
/// over n complex coordinates carries 2n first derivatives and the upper
/// triangle of the symmetric 2n x 2n second-derivative array.
///
/// `order()` tracks how many derivative levels are still exact. Jets built
/// from expressions start at order 2; taking `partial()` lowers it by one.
/// Reading a level that is no longer carried throws InsufficientJetOrder.
/// A jet with zero directions is a plain constant and broadcasts against any
/// other jet.
class Jet {
 public:
  static constexpr int kMaxOrder = 2;

  Jet() : data_(1, Complex{}) {}
  Jet(Complex value) : data_(1, value) {}  // NOLINT: implicit constants are the point
  Jet(double value) : data_(1, Complex{value, 0.0}) {}  // NOLINT

  /// Constant jet with explicit direction count (all derivatives zero).
  static Jet constant(Complex value, int dirs);
  /// The coordinate function whose derivative along `direction` is one.
  static Jet variable(Complex value, int dirs, int direction);

  int dirs() const noexcept { return dirs_; }
  int order() const noexcept { return order_; }
  int coords() const noexcept { return dirs_ / 2; }

  Complex value() const noexcept { return data_[0]; }
  Complex d1(int a) const;
  Complex d2(int a, int b) const;

  void set_value(Complex v) { data_[0] = v; }
  void set_d1(int a, Complex v);
  void set_d2(int a, int b, Complex v);
  void set_order(int order) { order_ = order; }

  /// Jet of the derivative along `direction`; one order lower.
  Jet partial(int direction) const;

  /// Wirtinger conjugation: swaps the dz and dzbar slots and conjugates.
  Jet conj() const;

  /// Applies a scalar function given its value and first two derivatives at value().
  Jet compose(Complex f, Complex df, Complex d2f) const;

  Jet operator-() const;
  Jet& operator+=(const Jet& b);
  Jet& operator-=(const Jet& b);
  Jet& operator*=(const Jet& b);
  Jet& operator/=(const Jet& b);

  /// Largest magnitude over every carried slot (value and exact derivatives).
  double max_abs() const;

 private:
  Jet(int dirs, int order);
  static std::size_t tri(int dirs, int a, int b);
  static int common_dirs(const Jet& a, const Jet& b);
  void widen(int dirs);

  friend Jet operator*(const Jet& a, const Jet& b);

  int dirs_ = 0;
  int order_ = kMaxOrder;
  // [value, d1[0..dirs), d2 upper triangle row-major]
  std::vector<Complex> data_;
};

Jet operator+(const Jet& a, const Jet& b);
Jet operator-(const Jet& a, const Jet& b);
Jet operator*(const Jet& a, const Jet& b);
Jet operator/(const Jet& a, const Jet& b);

Jet conj(const Jet& a);
Jet exp(const Jet& a);
/// Principal logarithm; requires Re(value) > 0.
Jet ln(const Jet& a);
/// Principal square root; requires Re(value) > 0.
Jet sqrt(const Jet& a);
Jet pow_int(const Jet& a, int k);
Jet real_part(const Jet& a);
Jet imag_part(const Jet& a);
Jet abs2(const Jet& a);

/// Largest difference over slots that both jets carry exactly.
double max_abs_diff(const Jet& a, const Jet& b);

}  // namespace hermitlab
