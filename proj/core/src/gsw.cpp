#include "collimator/gsw.hpp"

#include "collimator/errors.hpp"

namespace collimator {

std::string_view to_string(GswColor color) { return color == GswColor::Green ? "green" : "red"; }

void GswParams::validate() const {
  if (!(pos_threshold_mm > 0.0) || !(ang_threshold_deg > 0.0)) {
    throw ConfigError("GSW thresholds must be positive");
  }
  if (!(cylinder_length_mm > 0.0) || !(cylinder_radius_mm > 0.0)) {
    throw ConfigError("GSW cylinder dimensions must be positive");
  }
}

GswColor gsw_color(double pem, double aem_swing, const GswParams& params) {
  return pem <= params.pos_threshold_mm && aem_swing <= params.ang_threshold_deg ? GswColor::Green
                                                                                 : GswColor::Red;
}

GswFrame gsw_frame(const Pose& tool, const Pose& target, const GswParams& params) {
  params.validate();
  const ErrorState error = compute_error(tool, target);
  GswFrame f;
  f.tool_cylinder = {tool, params.cylinder_length_mm, params.cylinder_radius_mm};
  f.target_cylinder = {target, params.cylinder_length_mm, params.cylinder_radius_mm};
  f.pem = error.pem;
  f.aem_swing = error.swing_deg;
  f.color = gsw_color(f.pem, f.aem_swing, params);
  return f;
}

}  // namespace collimator
