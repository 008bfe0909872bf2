#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "collimator/pose.hpp"

namespace collimator {

enum class TargetGroup { Training, Mandible, Maxilla };

std::string_view to_string(TargetGroup group);
TargetGroup target_group_from_string(std::string_view name);

/// Implant entry point plus drill direction. The target's local +Y is the
/// axis the drill must be aligned with.
struct Target {
  int id = 0;
  Pose pose;
  TargetGroup group = TargetGroup::Training;
};

/// Uniform targets inside a ball, random directions, ids 1..n.
std::vector<Target> training_targets(std::uint64_t seed, int n = 32, double radius_mm = 300.0,
                                     const Vec3& center = {});

/// Procedural dental arch. The arch is the parabola z = center.z + c * x^2
/// opening away from the user, with c chosen so the curve passes through
/// (+-width/2, center.z + depth). Teeth sit at equal arc-length spacing on
/// each side of the midline.
struct ArchParams {
  Vec3 center{0.0, -60.0, 250.0};
  double width_mm = 50.0;
  double depth_mm = 40.0;
  double spacing_mm = 6.0;
  /// Maxillary occlusal plane height above the mandibular one.
  double occlusal_gap_mm = 20.0;
  /// Outward (buccal) lean of the drill axis; interpolated incisor -> third molar.
  double incisor_tilt_deg = 15.0;
  double molar_tilt_deg = 5.0;

  void validate() const;
};

/// 16 targets with FDI tooth numbers as ids (mandible 31-38/41-48,
/// maxilla 11-18/21-28). Mandibular axes point up (+Y), maxillary down.
std::vector<Target> arch_targets(TargetGroup group, const ArchParams& params = {});

}  // namespace collimator
