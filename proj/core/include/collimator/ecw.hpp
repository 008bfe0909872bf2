#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>

#include "collimator/pose.hpp"

namespace collimator {

/// The five error component widgets, in frame order.
enum class EcwKind { PEX, PEY, PEZ, AEX, AEZ };

inline constexpr std::array<EcwKind, 5> kEcwKinds{EcwKind::PEX, EcwKind::PEY, EcwKind::PEZ,
                                                  EcwKind::AEX, EcwKind::AEZ};

std::string_view to_string(EcwKind kind);
EcwKind ecw_kind_from_string(std::string_view name);

constexpr bool is_positional(EcwKind kind) {
  return kind == EcwKind::PEX || kind == EcwKind::PEY || kind == EcwKind::PEZ;
}

/// Per-component amplification parameters. `acce` and `mdt` are in mm for
/// positional kinds and degrees for angular kinds.
struct EcwConfig {
  EcwKind kind = EcwKind::PEX;
  double gain = 1.0;
  double acce = 0.0;
  double mdt = 1.0;
  std::string color;
  std::string symbol;

  /// Throws ConfigError unless gain > 0 and 0 <= acce < mdt.
  void validate() const;
};

using AcwConfigs = std::array<EcwConfig, 5>;

/// Study parameters: positional (50, 2 mm, 50 mm), angular (0.1, 2 deg, 45 deg).
AcwConfigs default_acw_configs();

/// Collimator separation in raw units:
///   0                 if |e| <= acce
///   gain * |e|        if acce < |e| < mdt
///   gain * mdt        if |e| >= mdt
/// The jump from 0 to gain * acce at the deadband edge is intentional.
double collimation_separation(double e, const EcwConfig& cfg);

struct EcwState {
  EcwConfig config;
  double e = 0.0;
  double cs = 0.0;
  bool visible = false;
  bool collimated = true;
  /// Widget-local symbol placements. `anchor_a` sits on the side of the
  /// error's sign and faces `anchor_b`.
  Pose anchor_a;
  Pose anchor_b;
};

/// Widget-local direction along which an ECW's symbol pair separates.
Vec3 motion_direction(EcwKind kind);

/// Signed component of `error` shown by an ECW of `kind`.
double component_error(const ErrorState& error, EcwKind kind);

EcwState ecw_state(const ErrorState& error, const EcwConfig& cfg, double display_scale);

struct WidgetPlacement {
  double offset_mm = 40.0;
  Vec3 tool_local_up = kToolAxis;
};

struct AcwFrame {
  /// World pose of the widget; orientation is world-aligned since the ECWs
  /// are world referenced.
  Pose widget_origin;
  std::array<EcwState, 5> ecws;
  bool fully_collimated = true;
  double display_scale = 0.1;
};

inline constexpr double kDefaultDisplayScale = 0.1;

/// `configs` may be in any order but must name each kind exactly once.
AcwFrame acw_frame(const Pose& tool, const Pose& target, std::span<const EcwConfig> configs,
                   const WidgetPlacement& placement = {},
                   double display_scale = kDefaultDisplayScale);

/// Reorders `configs` to frame order after checking coverage and validity.
AcwConfigs ordered_configs(std::span<const EcwConfig> configs);

}  // namespace collimator
