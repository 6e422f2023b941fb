#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "hermitlab/expr.hpp"

namespace hermitlab {

inline constexpr std::uint64_t kDefaultSeed = 0x5EED;

/// Sampling region: a disc per coordinate, rejected against the constraints.
struct SampleRegion {
  std::vector<Complex> center;
  double radius = 1.0;
};

struct CatalogEntry {
  MetricField metric;
  std::map<std::string, bool> expected;  // classification flag name -> value
  SampleRegion region;
  std::string note;
};

/// Names accepted by catalog_get besides "random_polynomial:<seed>".
std::vector<std::string> catalog_names();

/// Throws InvalidInput for an unknown name.
CatalogEntry catalog_get(std::string_view name);

/// Identity plus a small Hermitian perturbation with polynomial entries of
/// degree <= 2 in z, zbar; positive definite on the unit polydisc.
CatalogEntry random_polynomial(std::uint64_t seed);

/// `count` admissible points, deterministic in `seed`. Throws DomainError when
/// 10x oversampling does not produce enough admissible points.
std::vector<std::vector<Complex>> sample_points(const MetricField& metric, const SampleRegion& region,
                                                int count, std::uint64_t seed = kDefaultSeed);

}  // namespace hermitlab
