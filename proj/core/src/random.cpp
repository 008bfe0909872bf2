#include "collimator/random.hpp"

#include <cmath>
#include <numbers>

namespace collimator {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::uint64_t Rng::below(std::uint64_t n) {
  // Rejection keeps the result unbiased.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t r = engine_();
  while (r >= limit) {
    r = engine_();
  }
  return r % n;
}

double Rng::normal(double mean, double stddev) {
  if (has_spare_) {
    has_spare_ = false;
    return mean + stddev * spare_normal_;
  }
  // Marsaglia polar method.
  double u = 0.0;
  double v = 0.0;
  double s = 0.0;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_normal_ = v * f;
  has_spare_ = true;
  return mean + stddev * u * f;
}

Vec3 Rng::unit_vector() {
  const double z = uniform(-1.0, 1.0);
  const double phi = uniform(0.0, 2.0 * std::numbers::pi);
  const double r = std::sqrt(1.0 - z * z);
  return {r * std::cos(phi), r * std::sin(phi), z};
}

UnitQuat Rng::rotation() {
  // Shoemake's uniform rotation sampling.
  const double u1 = uniform();
  const double u2 = uniform(0.0, 2.0 * std::numbers::pi);
  const double u3 = uniform(0.0, 2.0 * std::numbers::pi);
  const double a = std::sqrt(1.0 - u1);
  const double b = std::sqrt(u1);
  return UnitQuat::normalized(a * std::sin(u2), a * std::cos(u2), b * std::sin(u3),
                              b * std::cos(u3));
}

std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> path) {
  std::uint64_t s = splitmix64(base);
  for (std::uint64_t id : path) {
    s = splitmix64(s ^ splitmix64(id + 0x632BE59BD9B4E019ULL));
  }
  return s;
}

}  // namespace collimator
