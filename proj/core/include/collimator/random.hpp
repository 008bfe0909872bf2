#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <random>
#include <span>

#include "collimator/pose.hpp"

namespace collimator {

/// Seeded generator with distributions implemented here rather than taken
/// from <random>, whose distribution algorithms differ between standard
/// libraries. Output is identical on every platform for a given seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n);
  double normal(double mean = 0.0, double stddev = 1.0);
  Vec3 unit_vector();
  UnitQuat rotation();

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

/// Derives an independent stream seed from a base seed and a path of ids.
std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> path);

}  // namespace collimator
