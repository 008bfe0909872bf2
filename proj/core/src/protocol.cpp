#include "collimator/protocol.hpp"

#include <cmath>

#include "collimator/errors.hpp"

namespace collimator {

ojson to_json(const Vec3& v) { return ojson::array({v.x, v.y, v.z}); }

ojson to_json(const UnitQuat& q) { return ojson::array({q.w(), q.x(), q.y(), q.z()}); }

ojson to_json(const Pose& p) {
  ojson j;
  j["position"] = to_json(p.position);
  j["orientation"] = to_json(p.orientation);
  return j;
}

ojson to_json(const Target& t) {
  ojson j;
  j["id"] = t.id;
  j["group"] = to_string(t.group);
  j["pose"] = to_json(t.pose);
  return j;
}

ojson to_json(const EcwState& s) {
  ojson j;
  j["kind"] = to_string(s.config.kind);
  j["e"] = s.e;
  j["cs"] = s.cs;
  j["visible"] = s.visible;
  j["color"] = s.config.color;
  j["symbol"] = s.config.symbol;
  j["anchor_a"] = to_json(s.anchor_a);
  j["anchor_b"] = to_json(s.anchor_b);
  return j;
}

ojson to_json(const AcwFrame& f) {
  ojson j;
  j["origin"] = to_json(f.widget_origin);
  j["display_scale"] = f.display_scale;
  j["fully_collimated"] = f.fully_collimated;
  j["ecws"] = ojson::array();
  for (const EcwState& s : f.ecws) {
    j["ecws"].push_back(to_json(s));
  }
  return j;
}

namespace {

ojson cylinder_json(const Cylinder& c) {
  ojson j;
  j["pose"] = to_json(c.pose);
  j["length"] = c.length_mm;
  j["radius"] = c.radius_mm;
  return j;
}

}  // namespace

ojson to_json(const GswFrame& f) {
  ojson j;
  j["tool_cylinder"] = cylinder_json(f.tool_cylinder);
  j["target_cylinder"] = cylinder_json(f.target_cylinder);
  j["color"] = to_string(f.color);
  j["pem"] = f.pem;
  j["aem_swing"] = f.aem_swing;
  return j;
}

ojson to_json(const TrialRecord& r) {
  ojson j;
  j["participant_id"] = r.participant_id;
  j["set"] = to_string(r.set);
  j["block"] = r.block;
  j["widget"] = to_string(r.widget);
  j["target_id"] = r.target_id;
  j["group"] = to_string(r.group);
  j["first_of_block"] = r.first_of_block;
  j["tt_ms"] = r.tt_ms;
  j["pem_mm"] = r.pem;
  j["pe_x_mm"] = r.pe_x;
  j["pe_y_mm"] = r.pe_y;
  j["pe_z_mm"] = r.pe_z;
  j["aem_deg"] = r.aem;
  j["ae_x_deg"] = r.ae_x;
  j["ae_y_deg"] = r.ae_y;
  j["ae_z_deg"] = r.ae_z;
  j["swing_deg"] = r.swing_deg;
  return j;
}

namespace {

double finite_number(const nlohmann::json& j) {
  if (!j.is_number()) {
    throw ParseError("expected a number, got " + j.dump());
  }
  const double v = j.get<double>();
  if (!std::isfinite(v)) {
    throw ParseError("non-finite number");
  }
  return v;
}

}  // namespace

Vec3 vec3_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 3) {
    throw ParseError("vector must be an array of 3 numbers");
  }
  return {finite_number(j[0]), finite_number(j[1]), finite_number(j[2])};
}

UnitQuat quat_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 4) {
    throw ParseError("quaternion must be an array [w, x, y, z]");
  }
  return UnitQuat::from_wxyz(finite_number(j[0]), finite_number(j[1]), finite_number(j[2]),
                             finite_number(j[3]));
}

Pose pose_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("position") || !j.contains("orientation")) {
    throw ParseError("pose needs 'position' and 'orientation'");
  }
  return {vec3_from_json(j["position"]), quat_from_json(j["orientation"])};
}

Target target_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("id") || !j.contains("group") || !j.contains("pose") ||
      !j["id"].is_number_integer() || !j["group"].is_string()) {
    throw ParseError("target needs integer 'id', string 'group' and 'pose'");
  }
  Target t;
  t.id = j["id"].get<int>();
  try {
    t.group = target_group_from_string(j["group"].get<std::string>());
  } catch (const ConfigError& e) {
    throw ParseError(e.what());
  }
  t.pose = pose_from_json(j["pose"]);
  return t;
}

std::vector<Target> targets_from_json(const nlohmann::json& j) {
  if (!j.is_array()) {
    throw ParseError("target list must be an array");
  }
  std::vector<Target> out;
  for (const auto& t : j) {
    out.push_back(target_from_json(t));
  }
  return out;
}

ojson make_message(std::string_view type, ojson payload) {
  ojson m;
  m["type"] = type;
  m["payload"] = std::move(payload);
  return m;
}

std::string encode(const ojson& message) { return message.dump(); }

Message parse_message(std::string_view line) {
  nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
  if (j.is_discarded()) {
    throw ParseError("malformed JSON");
  }
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) {
    throw ParseError("message needs a string 'type'");
  }
  Message m;
  m.type = j["type"].get<std::string>();
  if (auto it = j.find("payload"); it != j.end()) {
    m.payload = *it;
  }
  return m;
}

}  // namespace collimator
