#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "hermitlab/jet.hpp"

namespace hermitlab {

/// Dense multi-index array with row-major storage.
template <class S>
class Tensor {
 public:
  Tensor() = default;
  Tensor(std::initializer_list<int> shape, const S& fill = S{}) : shape_(shape) {
    std::size_t count = 1;
    for (int s : shape_) count *= static_cast<std::size_t>(s);
    data_.assign(count, fill);
  }

  template <class... I>
  S& operator()(I... idx) {
    return data_[offset({static_cast<int>(idx)...})];
  }
  template <class... I>
  const S& operator()(I... idx) const {
    return data_[offset({static_cast<int>(idx)...})];
  }

  const std::vector<int>& shape() const noexcept { return shape_; }
  std::size_t size() const noexcept { return data_.size(); }
  auto begin() { return data_.begin(); }
  auto end() { return data_.end(); }
  auto begin() const { return data_.begin(); }
  auto end() const { return data_.end(); }
  S& flat(std::size_t k) { return data_[k]; }
  const S& flat(std::size_t k) const { return data_[k]; }

 private:
  std::size_t offset(std::initializer_list<int> idx) const {
    std::size_t k = 0;
    auto s = shape_.begin();
    for (int i : idx) k = k * static_cast<std::size_t>(*s++) + static_cast<std::size_t>(i);
    return k;
  }

  std::vector<int> shape_;
  std::vector<S> data_;
};

using CTensor = Tensor<Complex>;
using JTensor = Tensor<Jet>;

inline double max_abs(const CTensor& t) {
  double m = 0.0;
  for (const auto& v : t) m = std::max(m, std::abs(v));
  return m;
}

inline double max_abs_diff(const CTensor& a, const CTensor& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a.flat(k) - b.flat(k)));
  return m;
}

/// Values of a jet tensor.
inline CTensor values(const JTensor& t) {
  CTensor out;
  const auto& s = t.shape();
  if (s.size() == 1) out = CTensor({s[0]});
  if (s.size() == 2) out = CTensor({s[0], s[1]});
  if (s.size() == 3) out = CTensor({s[0], s[1], s[2]});
  if (s.size() == 4) out = CTensor({s[0], s[1], s[2], s[3]});
  for (std::size_t k = 0; k < t.size(); ++k) out.flat(k) = t.flat(k).value();
  return out;
}

}  // namespace hermitlab
