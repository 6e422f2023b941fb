#pragma once

#include <complex>
#include <functional>
#include <random>
#include <vector>

#include "hermitlab/catalog.hpp"

namespace support {

using hermitlab::Complex;
using Point = std::vector<Complex>;
using Scalar = std::function<Complex(const Point&)>;

// Central differences, independent of the library's oracle.
// Direction a < n is d/dz_a, otherwise d/dzbar_{a-n}.
inline Complex wirtinger_fd(const Scalar& f, const Point& p, int a, double h = 1e-5) {
  const int n = static_cast<int>(p.size());
  const int m = a % n;
  auto at = [&](Complex dz) {
    Point q = p;
    q[static_cast<std::size_t>(m)] += dz;
    return f(q);
  };
  const Complex dx = (at({h, 0}) - at({-h, 0})) / (2 * h);
  const Complex dy = (at({0, h}) - at({0, -h})) / (2 * h);
  const Complex i{0, 1};
  return a < n ? 0.5 * (dx - i * dy) : 0.5 * (dx + i * dy);
}

inline Complex wirtinger_fd2(const Scalar& f, const Point& p, int a, int b, double h = 1e-4) {
  const Scalar fa = [&](const Point& q) { return wirtinger_fd(f, q, a, h); };
  return wirtinger_fd(fa, p, b, h);
}

inline Point random_point(std::mt19937_64& rng, int n, double radius = 0.8) {
  std::uniform_real_distribution<double> u(-radius, radius);
  Point p;
  for (int k = 0; k < n; ++k) p.emplace_back(u(rng), u(rng));
  return p;
}

inline std::vector<Point> sample(const std::string& name, int count, std::uint64_t seed = hermitlab::kDefaultSeed) {
  const auto e = hermitlab::catalog_get(name);
  return hermitlab::sample_points(e.metric, e.region, count, seed);
}

inline std::vector<std::string> sweep_names(int randoms) {
  auto names = hermitlab::catalog_names();
  for (int s = 1; s <= randoms; ++s) names.push_back("random_polynomial:" + std::to_string(s));
  return names;
}

}  // namespace support
