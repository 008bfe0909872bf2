#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "collimator/ecw.hpp"
#include "collimator/gsw.hpp"
#include "collimator/operator.hpp"
#include "collimator/targets.hpp"

namespace collimator {

struct TrainingParams {
  int count = 32;
  double radius_mm = 300.0;
  Vec3 center;
};

/// Everything a session, simulation or frame service needs. Loaded from a
/// JSON file; keys that are absent keep their defaults.
struct EngineConfig {
  AcwConfigs ecws = default_acw_configs();
  GswParams gsw;
  double display_scale = kDefaultDisplayScale;
  WidgetPlacement placement;
  ArchParams arch;
  TrainingParams training;
  /// Where each simulated trial starts; the tool is flipped for maxillary blocks.
  Vec3 home_position;
  OperatorParams op;
  std::optional<std::uint64_t> seed;

  void validate() const;
};

EngineConfig config_from_json(const nlohmann::json& j);
nlohmann::ordered_json config_to_json(const EngineConfig& config);

/// Reads `path`; throws ParseError / ConfigError with the file name on failure.
EngineConfig load_config(const std::filesystem::path& path);

/// `explicit_path` if given, else $COLLIMATOR_CONFIG if set, else defaults.
EngineConfig resolve_config(const std::optional<std::filesystem::path>& explicit_path);

}  // namespace collimator
