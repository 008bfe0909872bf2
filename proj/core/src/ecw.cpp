#include "collimator/ecw.hpp"

#include <cmath>

#include "collimator/errors.hpp"

namespace collimator {

std::string_view to_string(EcwKind kind) {
  switch (kind) {
    case EcwKind::PEX: return "PEX";
    case EcwKind::PEY: return "PEY";
    case EcwKind::PEZ: return "PEZ";
    case EcwKind::AEX: return "AEX";
    case EcwKind::AEZ: return "AEZ";
  }
  return "?";
}

EcwKind ecw_kind_from_string(std::string_view name) {
  for (EcwKind k : kEcwKinds) {
    if (to_string(k) == name) {
      return k;
    }
  }
  throw ConfigError("unknown ECW kind '" + std::string(name) + "'");
}

void EcwConfig::validate() const {
  const std::string who(to_string(kind));
  if (!(gain > 0.0) || !std::isfinite(gain)) {
    throw ConfigError(who + ": gain must be positive");
  }
  if (!(acce >= 0.0)) {
    throw ConfigError(who + ": acce must be non-negative");
  }
  if (!(mdt > acce) || !std::isfinite(mdt)) {
    throw ConfigError(who + ": mdt must exceed acce");
  }
}

AcwConfigs default_acw_configs() {
  return {{
      {EcwKind::PEX, 50.0, 2.0, 50.0, "red", ">"},
      {EcwKind::PEY, 50.0, 2.0, 50.0, "green", ">"},
      {EcwKind::PEZ, 50.0, 2.0, 50.0, "blue", ">"},
      {EcwKind::AEX, 0.1, 2.0, 45.0, "yellow", "C"},
      {EcwKind::AEZ, 0.1, 2.0, 45.0, "cyan", "C"},
  }};
}

namespace {

// Attenuating gains such as 0.1 have no exact binary form, and 3 * 0.1 rounds
// away from 0.3. Dividing by an exactly integral reciprocal rounds correctly.
double amplify(double gain, double magnitude) {
  if (gain < 1.0) {
    const double divisor = 1.0 / gain;
    if (divisor == std::nearbyint(divisor)) {
      return magnitude / divisor;
    }
  }
  return gain * magnitude;
}

UnitQuat facing(const Vec3& direction) { return UnitQuat::between(kUnitX, direction); }

}  // namespace

double collimation_separation(double e, const EcwConfig& cfg) {
  const double magnitude = std::abs(e);
  if (magnitude <= cfg.acce) {
    return 0.0;
  }
  if (magnitude >= cfg.mdt) {
    return amplify(cfg.gain, cfg.mdt);
  }
  return amplify(cfg.gain, magnitude);
}

Vec3 motion_direction(EcwKind kind) {
  switch (kind) {
    case EcwKind::PEX: return kUnitX;
    case EcwKind::PEY: return kUnitY;
    case EcwKind::PEZ: return kUnitZ;
    // Pitch halves separate in the plane of rotation about X (vertical),
    // roll halves in the plane of rotation about Z (horizontal).
    case EcwKind::AEX: return kUnitY;
    case EcwKind::AEZ: return kUnitX;
  }
  return kUnitX;
}

double component_error(const ErrorState& error, EcwKind kind) {
  switch (kind) {
    case EcwKind::PEX: return error.pe.x;
    case EcwKind::PEY: return error.pe.y;
    case EcwKind::PEZ: return error.pe.z;
    case EcwKind::AEX: return error.ae_euler.x_deg;
    case EcwKind::AEZ: return error.ae_euler.z_deg;
  }
  return 0.0;
}

EcwState ecw_state(const ErrorState& error, const EcwConfig& cfg, double display_scale) {
  if (!(display_scale > 0.0)) {
    throw ConfigError("display_scale must be positive");
  }
  EcwState s;
  s.config = cfg;
  s.e = component_error(error, cfg.kind);
  s.cs = collimation_separation(s.e, cfg);
  s.collimated = std::abs(s.e) <= cfg.acce;
  s.visible = !s.collimated;

  const double sign = s.e < 0.0 ? -1.0 : 1.0;
  const Vec3 lead = motion_direction(cfg.kind) * sign;
  const double half = 0.5 * s.cs * display_scale;
  s.anchor_a = Pose{lead * half, facing(-lead)};
  s.anchor_b = Pose{lead * -half, facing(lead)};
  return s;
}

AcwConfigs ordered_configs(std::span<const EcwConfig> configs) {
  if (configs.size() != kEcwKinds.size()) {
    throw ConfigError("ACW needs exactly 5 ECW configs, got " + std::to_string(configs.size()));
  }
  AcwConfigs out;
  std::array<bool, 5> seen{};
  for (const EcwConfig& cfg : configs) {
    cfg.validate();
    const auto idx = static_cast<std::size_t>(cfg.kind);
    if (seen[idx]) {
      throw ConfigError("duplicate ECW config for " + std::string(to_string(cfg.kind)));
    }
    seen[idx] = true;
    out[idx] = cfg;
  }
  return out;
}

AcwFrame acw_frame(const Pose& tool, const Pose& target, std::span<const EcwConfig> configs,
                   const WidgetPlacement& placement, double display_scale) {
  const AcwConfigs ordered = ordered_configs(configs);
  const ErrorState error = compute_error(tool, target);

  AcwFrame frame;
  frame.display_scale = display_scale;
  frame.widget_origin.position =
      tool.position + tool.orientation.rotate(placement.tool_local_up.normalized()) *
                          placement.offset_mm;
  frame.fully_collimated = true;
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    frame.ecws[i] = ecw_state(error, ordered[i], display_scale);
    frame.fully_collimated = frame.fully_collimated && frame.ecws[i].collimated;
  }
  return frame;
}

}  // namespace collimator
