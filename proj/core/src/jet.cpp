#include "hermitlab/jet.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hermitlab/error.hpp"

namespace hermitlab {

namespace {

std::size_t storage_size(int dirs) {
  const auto d = static_cast<std::size_t>(dirs);
  return 1 + d + d * (d + 1) / 2;
}

std::string describe(Complex v) {
  std::ostringstream os;
  os << v.real() << (v.imag() < 0 ? "-" : "+") << std::abs(v.imag()) << "i";
  return os.str();
}

}  // namespace

Jet::Jet(int dirs, int order) : dirs_(dirs), order_(order), data_(storage_size(dirs), Complex{}) {}

Jet Jet::constant(Complex value, int dirs) {
  Jet j(dirs, kMaxOrder);
  j.data_[0] = value;
  return j;
}

Jet Jet::variable(Complex value, int dirs, int direction) {
  Jet j(dirs, kMaxOrder);
  j.data_[0] = value;
  j.data_[1 + direction] = 1.0;
  return j;
}

std::size_t Jet::tri(int dirs, int a, int b) {
  if (a > b) std::swap(a, b);
  const auto d = static_cast<std::size_t>(dirs);
  const auto ua = static_cast<std::size_t>(a);
  const std::size_t row_start = ua * d - (ua * (ua + 1)) / 2 + ua;
  return 1 + d + row_start + static_cast<std::size_t>(b) - ua;
}

Complex Jet::d1(int a) const {
  if (order_ < 1) throw InsufficientJetOrder("first derivative requested from an order-0 jet");
  if (dirs_ == 0) return {};
  return data_[1 + a];
}

Complex Jet::d2(int a, int b) const {
  if (order_ < 2) throw InsufficientJetOrder("second derivative requested from a jet of order " +
                                              std::to_string(order_));
  if (dirs_ == 0) return {};
  return data_[tri(dirs_, a, b)];
}

void Jet::set_d1(int a, Complex v) { data_[1 + a] = v; }
void Jet::set_d2(int a, int b, Complex v) { data_[tri(dirs_, a, b)] = v; }

void Jet::widen(int dirs) {
  if (dirs_ == dirs) return;
  const Complex v = data_[0];
  data_.assign(storage_size(dirs), Complex{});
  data_[0] = v;
  dirs_ = dirs;
}

int Jet::common_dirs(const Jet& a, const Jet& b) {
  if (a.dirs_ == b.dirs_ || b.dirs_ == 0) return a.dirs_;
  if (a.dirs_ == 0) return b.dirs_;
  throw InvalidInput("jets over different coordinate counts combined (" + std::to_string(a.dirs_) +
                     " vs " + std::to_string(b.dirs_) + " directions)");
}

Jet Jet::partial(int direction) const {
  if (order_ < 1) throw InsufficientJetOrder("cannot differentiate an order-0 jet");
  if (dirs_ == 0) return Jet();
  Jet out(dirs_, order_ - 1);
  out.data_[0] = data_[1 + direction];
  if (order_ >= 2) {
    for (int b = 0; b < dirs_; ++b) out.data_[1 + b] = data_[tri(dirs_, direction, b)];
  }
  return out;
}

Jet Jet::conj() const {
  Jet out(dirs_, order_);
  out.data_[0] = std::conj(data_[0]);
  if (dirs_ == 0) return out;
  const int n = dirs_ / 2;
  auto swap = [n](int a) { return a < n ? a + n : a - n; };
  for (int a = 0; a < dirs_; ++a) out.data_[1 + a] = std::conj(data_[1 + swap(a)]);
  for (int a = 0; a < dirs_; ++a) {
    for (int b = a; b < dirs_; ++b) {
      out.data_[tri(dirs_, a, b)] = std::conj(data_[tri(dirs_, swap(a), swap(b))]);
    }
  }
  return out;
}

Jet Jet::compose(Complex f, Complex df, Complex d2f) const {
  Jet out(dirs_, order_);
  out.data_[0] = f;
  for (int a = 0; a < dirs_; ++a) out.data_[1 + a] = df * data_[1 + a];
  for (int a = 0; a < dirs_; ++a) {
    for (int b = a; b < dirs_; ++b) {
      const std::size_t k = tri(dirs_, a, b);
      out.data_[k] = df * data_[k] + d2f * data_[1 + a] * data_[1 + b];
    }
  }
  return out;
}

Jet Jet::operator-() const {
  Jet out = *this;
  for (auto& c : out.data_) c = -c;
  return out;
}

Jet& Jet::operator+=(const Jet& b) {
  widen(common_dirs(*this, b));
  order_ = std::min(order_, b.order_);
  if (b.dirs_ == 0) {
    data_[0] += b.data_[0];
  } else {
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += b.data_[k];
  }
  return *this;
}

Jet& Jet::operator-=(const Jet& b) {
  widen(common_dirs(*this, b));
  order_ = std::min(order_, b.order_);
  if (b.dirs_ == 0) {
    data_[0] -= b.data_[0];
  } else {
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= b.data_[k];
  }
  return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
  const int dirs = Jet::common_dirs(a, b);
  if (b.dirs_ == 0 || a.dirs_ == 0) {
    const Jet& full = a.dirs_ == 0 ? b : a;
    const Complex s = a.dirs_ == 0 ? a.data_[0] : b.data_[0];
    Jet out = full;
    for (auto& c : out.data_) c *= s;
    out.order_ = std::min(a.order_, b.order_);
    return out;
  }
  Jet out(dirs, std::min(a.order_, b.order_));
  const Complex av = a.data_[0];
  const Complex bv = b.data_[0];
  out.data_[0] = av * bv;
  for (int i = 0; i < dirs; ++i) out.data_[1 + i] = a.data_[1 + i] * bv + av * b.data_[1 + i];
  for (int i = 0; i < dirs; ++i) {
    const Complex ai = a.data_[1 + i];
    const Complex bi = b.data_[1 + i];
    for (int j = i; j < dirs; ++j) {
      const std::size_t k = Jet::tri(dirs, i, j);
      out.data_[k] = a.data_[k] * bv + av * b.data_[k] + ai * b.data_[1 + j] + a.data_[1 + j] * bi;
    }
  }
  return out;
}

Jet& Jet::operator*=(const Jet& b) { return *this = *this * b; }

Jet& Jet::operator/=(const Jet& b) { return *this = *this / b; }

double Jet::max_abs() const {
  std::size_t count = 1;
  if (order_ >= 1) count += static_cast<std::size_t>(dirs_);
  if (order_ >= 2) count = data_.size();
  double m = 0.0;
  for (std::size_t k = 0; k < count; ++k) m = std::max(m, std::abs(data_[k]));
  return m;
}

Jet operator+(const Jet& a, const Jet& b) {
  Jet out = a;
  out += b;
  return out;
}

Jet operator-(const Jet& a, const Jet& b) {
  Jet out = a;
  out -= b;
  return out;
}

Jet operator/(const Jet& a, const Jet& b) {
  const Complex v = b.value();
  if (v == Complex{}) throw SingularEvaluation("division by a jet with zero value");
  const Complex r = 1.0 / v;
  return a * b.compose(r, -r * r, 2.0 * r * r * r);
}

Jet conj(const Jet& a) { return a.conj(); }

Jet exp(const Jet& a) {
  const Complex e = std::exp(a.value());
  return a.compose(e, e, e);
}

Jet ln(const Jet& a) {
  const Complex v = a.value();
  if (!(v.real() > 0.0)) {
    throw SingularEvaluation("ln outside its principal domain (Re > 0) at value " + describe(v));
  }
  return a.compose(std::log(v), 1.0 / v, -1.0 / (v * v));
}

Jet sqrt(const Jet& a) {
  const Complex v = a.value();
  if (!(v.real() > 0.0)) {
    throw SingularEvaluation("sqrt outside its principal domain (Re > 0) at value " + describe(v));
  }
  const Complex s = std::sqrt(v);
  return a.compose(s, 0.5 / s, -0.25 / (s * v));
}

Jet pow_int(const Jet& a, int k) {
  if (k == 0) return Jet::constant(1.0, a.dirs());
  const Complex v = a.value();
  if (k < 0 && v == Complex{}) throw SingularEvaluation("negative power of a jet with zero value");
  const auto kk = static_cast<double>(k);
  const Complex f = std::pow(v, k);
  const Complex df = kk * std::pow(v, k - 1);
  const Complex d2f = kk * (kk - 1.0) * (k >= 2 || k < 0 ? std::pow(v, k - 2) : Complex{});
  return a.compose(f, df, d2f);
}

Jet real_part(const Jet& a) { return (a + a.conj()) * 0.5; }

Jet imag_part(const Jet& a) { return (a - a.conj()) * Complex{0.0, -0.5}; }

Jet abs2(const Jet& a) { return a * a.conj(); }

double max_abs_diff(const Jet& a, const Jet& b) {
  const int order = std::min(a.order(), b.order());
  const int dirs = std::max(a.dirs(), b.dirs());
  double m = std::abs(a.value() - b.value());
  auto d1 = [](const Jet& j, int x) { return j.dirs() == 0 ? Complex{} : j.d1(x); };
  auto d2 = [](const Jet& j, int x, int y) { return j.dirs() == 0 ? Complex{} : j.d2(x, y); };
  if (order >= 1) {
    for (int x = 0; x < dirs; ++x) m = std::max(m, std::abs(d1(a, x) - d1(b, x)));
  }
  if (order >= 2) {
    for (int x = 0; x < dirs; ++x) {
      for (int y = x; y < dirs; ++y) m = std::max(m, std::abs(d2(a, x, y) - d2(b, x, y)));
    }
  }
  return m;
}

}  // namespace hermitlab
