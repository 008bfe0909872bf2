#pragma once

#include <string_view>

#include "collimator/pose.hpp"

namespace collimator {

enum class GswColor { Red, Green };

std::string_view to_string(GswColor color);

struct GswParams {
  double pos_threshold_mm = 2.0;
  double ang_threshold_deg = 2.0;
  double cylinder_length_mm = 20.0;
  double cylinder_radius_mm = 1.0;

  void validate() const;
};

struct Cylinder {
  /// Axis is the pose's tool axis (local +Y).
  Pose pose;
  double length_mm = 0.0;
  double radius_mm = 0.0;
};

struct GswFrame {
  Cylinder tool_cylinder;
  Cylinder target_cylinder;
  GswColor color = GswColor::Red;
  double pem = 0.0;
  /// Angle between drill and target axes; twist about the drill is ignored.
  double aem_swing = 0.0;
};

GswColor gsw_color(double pem, double aem_swing, const GswParams& params);

GswFrame gsw_frame(const Pose& tool, const Pose& target, const GswParams& params = {});

}  // namespace collimator
