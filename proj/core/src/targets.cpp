#include "collimator/targets.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "collimator/errors.hpp"
#include "collimator/random.hpp"

namespace collimator {

std::string_view to_string(TargetGroup group) {
  switch (group) {
    case TargetGroup::Training: return "training";
    case TargetGroup::Mandible: return "mandible";
    case TargetGroup::Maxilla: return "maxilla";
  }
  return "?";
}

TargetGroup target_group_from_string(std::string_view name) {
  if (name == "training") return TargetGroup::Training;
  if (name == "mandible") return TargetGroup::Mandible;
  if (name == "maxilla") return TargetGroup::Maxilla;
  throw ConfigError("unknown target group '" + std::string(name) + "'");
}

std::vector<Target> training_targets(std::uint64_t seed, int n, double radius_mm,
                                     const Vec3& center) {
  if (n <= 0 || !(radius_mm > 0.0)) {
    throw ConfigError("training targets need n > 0 and radius > 0");
  }
  Rng rng(seed);
  std::vector<Target> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double r = radius_mm * std::cbrt(rng.uniform());
    const Vec3 position = center + rng.unit_vector() * r;
    const Vec3 direction = rng.unit_vector();
    out.push_back({i + 1, Pose{position, UnitQuat::between(kToolAxis, direction)},
                   TargetGroup::Training});
  }
  return out;
}

void ArchParams::validate() const {
  if (!(width_mm > 0.0) || !(depth_mm > 0.0) || !(spacing_mm > 0.0)) {
    throw ConfigError("arch width, depth and spacing must be positive");
  }
  if (!(occlusal_gap_mm >= 0.0)) {
    throw ConfigError("occlusal gap must be non-negative");
  }
  if (std::abs(incisor_tilt_deg) >= 90.0 || std::abs(molar_tilt_deg) >= 90.0) {
    throw ConfigError("tooth tilt must be below 90 degrees");
  }
}

namespace {

// Arc length of z = c x^2 from 0 to x (x >= 0).
double parabola_arc_length(double c, double x) {
  const double u = 2.0 * c * x;
  return 0.5 * x * std::sqrt(1.0 + u * u) + std::asinh(u) / (4.0 * c);
}

double x_at_arc_length(double c, double s) {
  double lo = 0.0;
  double hi = s;  // arc length >= horizontal run
  for (int i = 0; i < 200 && hi - lo > 1e-12; ++i) {
    const double mid = 0.5 * (lo + hi);
    (parabola_arc_length(c, mid) < s ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::vector<Target> arch_targets(TargetGroup group, const ArchParams& params) {
  if (group == TargetGroup::Training) {
    throw ConfigError("arch targets are mandible or maxilla");
  }
  params.validate();
  const bool mandible = group == TargetGroup::Mandible;
  const double half_width = 0.5 * params.width_mm;
  const double c = params.depth_mm / (half_width * half_width);
  const double y = params.center.y + (mandible ? 0.0 : params.occlusal_gap_mm);
  const Vec3 up = mandible ? kUnitY : -kUnitY;
  // Flip maxillary targets about X so their twist matches a drill held upside down.
  const UnitQuat base =
      mandible ? UnitQuat{} : UnitQuat::from_axis_angle(kUnitX, 180.0);

  // Patient faces -Z, so the patient's right side is the user's -X.
  const int right_quadrant = mandible ? 40 : 10;
  const int left_quadrant = mandible ? 30 : 20;

  std::vector<Target> out;
  out.reserve(16);
  for (int side : {-1, 1}) {
    for (int tooth = 1; tooth <= 8; ++tooth) {
      const double s = (tooth - 0.5) * params.spacing_mm;
      const double x = side * x_at_arc_length(c, s);
      const Vec3 position{params.center.x + x, y, params.center.z + c * x * x};
      const Vec3 outward = Vec3{2.0 * c * x, 0.0, -1.0}.normalized();
      const double t = (tooth - 1) / 7.0;
      const double tilt =
          (params.incisor_tilt_deg + (params.molar_tilt_deg - params.incisor_tilt_deg) * t) *
          std::numbers::pi / 180.0;
      const Vec3 axis = up * std::cos(tilt) + outward * std::sin(tilt);
      const UnitQuat orientation = UnitQuat::between(up, axis) * base;
      const int id = (side < 0 ? right_quadrant : left_quadrant) + tooth;
      out.push_back({id, Pose{position, orientation}, group});
    }
  }
  return out;
}

}  // namespace collimator
