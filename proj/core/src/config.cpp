#include "collimator/config.hpp"

#include <cstdlib>
#include <fstream>

#include "collimator/errors.hpp"
#include "collimator/protocol.hpp"

namespace collimator {

using nlohmann::json;

void EngineConfig::validate() const {
  (void)ordered_configs(ecws);
  gsw.validate();
  if (!(display_scale > 0.0)) {
    throw ConfigError("display_scale must be positive");
  }
  if (!(placement.offset_mm >= 0.0)) {
    throw ConfigError("widget offset must be non-negative");
  }
  arch.validate();
  if (training.count <= 0 || !(training.radius_mm > 0.0)) {
    throw ConfigError("training count and radius must be positive");
  }
  op.validate();
}

namespace {

template <typename T>
void read(const json& j, const char* key, T& out) {
  if (auto it = j.find(key); it != j.end()) {
    out = it->get<T>();
  }
}

void read_vec(const json& j, const char* key, Vec3& out) {
  if (auto it = j.find(key); it != j.end()) {
    out = vec3_from_json(*it);
  }
}

}  // namespace

EngineConfig config_from_json(const json& j) {
  EngineConfig c;
  if (!j.is_object()) {
    throw ConfigError("config must be a JSON object");
  }
  try {
    if (auto it = j.find("ecws"); it != j.end()) {
      std::vector<EcwConfig> list;
      for (const json& e : *it) {
        EcwConfig cfg;
        cfg.kind = ecw_kind_from_string(e.at("kind").get<std::string>());
        for (const EcwConfig& d : default_acw_configs()) {
          if (d.kind == cfg.kind) cfg = d;
        }
        read(e, "gain", cfg.gain);
        read(e, "acce", cfg.acce);
        read(e, "mdt", cfg.mdt);
        read(e, "color", cfg.color);
        read(e, "symbol", cfg.symbol);
        list.push_back(cfg);
      }
      c.ecws = ordered_configs(list);
    }
    if (auto it = j.find("gsw"); it != j.end()) {
      read(*it, "pos_threshold_mm", c.gsw.pos_threshold_mm);
      read(*it, "ang_threshold_deg", c.gsw.ang_threshold_deg);
      read(*it, "cylinder_length_mm", c.gsw.cylinder_length_mm);
      read(*it, "cylinder_radius_mm", c.gsw.cylinder_radius_mm);
    }
    read(j, "display_scale", c.display_scale);
    if (auto it = j.find("placement"); it != j.end()) {
      read(*it, "offset_mm", c.placement.offset_mm);
      read_vec(*it, "tool_local_up", c.placement.tool_local_up);
    }
    if (auto it = j.find("arch"); it != j.end()) {
      read_vec(*it, "center", c.arch.center);
      read(*it, "width_mm", c.arch.width_mm);
      read(*it, "depth_mm", c.arch.depth_mm);
      read(*it, "spacing_mm", c.arch.spacing_mm);
      read(*it, "occlusal_gap_mm", c.arch.occlusal_gap_mm);
      read(*it, "incisor_tilt_deg", c.arch.incisor_tilt_deg);
      read(*it, "molar_tilt_deg", c.arch.molar_tilt_deg);
    }
    if (auto it = j.find("training"); it != j.end()) {
      read(*it, "count", c.training.count);
      read(*it, "radius_mm", c.training.radius_mm);
      read_vec(*it, "center", c.training.center);
    }
    read_vec(j, "home_position", c.home_position);
    if (auto it = j.find("operator"); it != j.end()) {
      read(*it, "motion_gain", c.op.motion_gain);
      read(*it, "motor_noise_mm", c.op.motor_noise_mm);
      read(*it, "motor_noise_deg", c.op.motor_noise_deg);
      read(*it, "perception_noise_mm", c.op.perception_noise_mm);
      read(*it, "perception_noise_deg", c.op.perception_noise_deg);
      read(*it, "reaction_steps", c.op.reaction_steps);
      read(*it, "max_steps", c.op.max_steps);
      read(*it, "step_ms", c.op.step_ms);
      if (auto p = it->find("policy"); p != it->end()) {
        c.op.policy = attention_policy_from_string(p->get<std::string>());
      }
    }
    if (auto it = j.find("seed"); it != j.end() && !it->is_null()) {
      c.seed = it->get<std::uint64_t>();
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  c.validate();
  return c;
}

nlohmann::ordered_json config_to_json(const EngineConfig& c) {
  nlohmann::ordered_json j;
  j["ecws"] = nlohmann::ordered_json::array();
  for (const EcwConfig& e : c.ecws) {
    j["ecws"].push_back({{"kind", to_string(e.kind)},
                         {"gain", e.gain},
                         {"acce", e.acce},
                         {"mdt", e.mdt},
                         {"color", e.color},
                         {"symbol", e.symbol}});
  }
  j["gsw"] = {{"pos_threshold_mm", c.gsw.pos_threshold_mm},
              {"ang_threshold_deg", c.gsw.ang_threshold_deg},
              {"cylinder_length_mm", c.gsw.cylinder_length_mm},
              {"cylinder_radius_mm", c.gsw.cylinder_radius_mm}};
  j["display_scale"] = c.display_scale;
  j["placement"] = {{"offset_mm", c.placement.offset_mm},
                    {"tool_local_up", to_json(c.placement.tool_local_up)}};
  j["arch"] = {{"center", to_json(c.arch.center)},
               {"width_mm", c.arch.width_mm},
               {"depth_mm", c.arch.depth_mm},
               {"spacing_mm", c.arch.spacing_mm},
               {"occlusal_gap_mm", c.arch.occlusal_gap_mm},
               {"incisor_tilt_deg", c.arch.incisor_tilt_deg},
               {"molar_tilt_deg", c.arch.molar_tilt_deg}};
  j["training"] = {{"count", c.training.count},
                   {"radius_mm", c.training.radius_mm},
                   {"center", to_json(c.training.center)}};
  j["home_position"] = to_json(c.home_position);
  j["operator"] = {{"motion_gain", c.op.motion_gain},
                   {"motor_noise_mm", c.op.motor_noise_mm},
                   {"motor_noise_deg", c.op.motor_noise_deg},
                   {"perception_noise_mm", c.op.perception_noise_mm},
                   {"perception_noise_deg", c.op.perception_noise_deg},
                   {"reaction_steps", c.op.reaction_steps},
                   {"max_steps", c.op.max_steps},
                   {"step_ms", c.op.step_ms},
                   {"policy", to_string(c.op.policy)}};
  if (c.seed) {
    j["seed"] = *c.seed;
  } else {
    j["seed"] = nullptr;
  }
  return j;
}

EngineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file " + path.string());
  }
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  try {
    return config_from_json(j);
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

EngineConfig resolve_config(const std::optional<std::filesystem::path>& explicit_path) {
  if (explicit_path) {
    return load_config(*explicit_path);
  }
  if (const char* env = std::getenv("COLLIMATOR_CONFIG"); env != nullptr && *env != '\0') {
    return load_config(env);
  }
  return EngineConfig{};
}

}  // namespace collimator
