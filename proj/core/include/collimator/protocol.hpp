#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "collimator/ecw.hpp"
#include "collimator/gsw.hpp"
#include "collimator/session.hpp"
#include "collimator/targets.hpp"

namespace collimator {

// Frame protocol: one JSON object per line, {"type": ..., "payload": ...}.
// Poses travel as {"position": [x, y, z], "orientation": [w, x, y, z]}.

using ojson = nlohmann::ordered_json;

namespace msg {
inline constexpr std::string_view kAcwFrame = "acw_frame";
inline constexpr std::string_view kGswFrame = "gsw_frame";
inline constexpr std::string_view kTrialBegin = "trial_begin";
inline constexpr std::string_view kTrialConfirm = "trial_confirm";
inline constexpr std::string_view kTarget = "target";
// Client -> engine.
inline constexpr std::string_view kPose = "pose";
inline constexpr std::string_view kConfirm = "confirm";
inline constexpr std::string_view kStatus = "status";
// Engine -> client.
inline constexpr std::string_view kSessionEnd = "session_end";
inline constexpr std::string_view kError = "error";
}  // namespace msg

ojson to_json(const Vec3& v);
ojson to_json(const UnitQuat& q);
ojson to_json(const Pose& p);
ojson to_json(const Target& t);
ojson to_json(const EcwState& s);
ojson to_json(const AcwFrame& f);
ojson to_json(const GswFrame& f);
ojson to_json(const TrialRecord& r);

Vec3 vec3_from_json(const nlohmann::json& j);
/// Rejects quaternions whose norm is not 1 within 1e-6 (InvalidQuaternion).
UnitQuat quat_from_json(const nlohmann::json& j);
Pose pose_from_json(const nlohmann::json& j);
Target target_from_json(const nlohmann::json& j);
std::vector<Target> targets_from_json(const nlohmann::json& j);

struct Message {
  std::string type;
  nlohmann::json payload;
};

ojson make_message(std::string_view type, ojson payload);
/// Compact single-line encoding, without the trailing newline.
std::string encode(const ojson& message);
/// Throws ParseError on invalid JSON or a missing/non-string "type".
Message parse_message(std::string_view line);

}  // namespace collimator
