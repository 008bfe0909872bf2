#include "collimator/frame_service.hpp"

#include <string>

#include "collimator/errors.hpp"

namespace collimator {

ojson error_message(std::string_view what) {
  ojson payload;
  payload["message"] = what;
  return make_message(msg::kError, std::move(payload));
}

FrameService::FrameService(EngineConfig config, SessionPlan plan, const Clock& clock,
                           RecordSink on_record)
    : config_(std::move(config)),
      session_(std::move(plan), clock),
      on_record_(std::move(on_record)) {
  config_.validate();
}

ojson FrameService::status() const {
  ojson p;
  p["participant_id"] = session_.plan().participant_id;
  p["set"] = to_string(session_.plan().set);
  p["finished"] = session_.finished();
  p["block"] = session_.block_index();
  p["trial"] = session_.trial_index();
  p["blocks"] = session_.plan().blocks.size();
  if (!session_.finished()) {
    const Block& b = session_.current_block();
    p["widget"] = to_string(b.widget);
    p["group"] = to_string(b.group);
    p["trials_in_block"] = b.targets.size();
    p["target_id"] = session_.current_target().id;
  }
  p["trial_active"] = session_.trial_active();
  p["records"] = session_.records().size();
  return make_message(msg::kStatus, std::move(p));
}

std::vector<ojson> FrameService::announce_current() {
  if (session_.finished()) {
    ojson p;
    p["records"] = session_.records().size();
    return {make_message(msg::kSessionEnd, std::move(p))};
  }
  const Block& block = session_.current_block();
  const Target& target = session_.current_target();
  const TrialClock& clock = session_.begin_trial();

  ojson target_payload = to_json(target);
  target_payload["show_target"] = block.training();

  ojson begin;
  begin["block"] = clock.block;
  begin["trial"] = clock.trial;
  begin["widget"] = to_string(block.widget);
  begin["group"] = to_string(block.group);
  begin["target_id"] = target.id;
  return {make_message(msg::kTarget, std::move(target_payload)),
          make_message(msg::kTrialBegin, std::move(begin))};
}

std::vector<ojson> FrameService::start() {
  if (started_) {
    return {status()};
  }
  started_ = true;
  return announce_current();
}

ojson FrameService::frame_for(const Pose& tool) const {
  const Block& block = session_.current_block();
  const Pose& target = session_.current_target().pose;
  if (block.widget == Widget::ACW) {
    return make_message(msg::kAcwFrame, to_json(acw_frame(tool, target, config_.ecws,
                                                          config_.placement,
                                                          config_.display_scale)));
  }
  return make_message(msg::kGswFrame, to_json(gsw_frame(tool, target, config_.gsw)));
}

std::vector<ojson> FrameService::handle_line(std::string_view line, bool read_only) {
  try {
    const Message m = parse_message(line);
    if (m.type == msg::kStatus) {
      return {status()};
    }
    if (m.type == msg::kTarget) {
      if (session_.finished()) {
        return {error_message("session is finished")};
      }
      return {make_message(msg::kTarget, to_json(session_.current_target()))};
    }
    if (read_only) {
      return {error_message("read-only connection: only status and target queries allowed")};
    }
    if (m.type == msg::kPose) {
      const Pose tool = pose_from_json(m.payload);
      if (session_.finished()) {
        return {error_message("session is finished")};
      }
      last_pose_ = tool;
      return {frame_for(tool)};
    }
    if (m.type == msg::kConfirm || m.type == msg::kTrialConfirm) {
      if (!m.payload.is_null()) {
        last_pose_ = pose_from_json(m.payload);
      }
      if (!last_pose_) {
        return {error_message("confirm needs a pose")};
      }
      if (!started_) {
        return {error_message("session not started")};
      }
      const bool logged = !session_.finished() && !session_.current_block().training();
      const TrialRecord record = session_.confirm_trial(*last_pose_);
      if (logged && on_record_) {
        on_record_(record);
      }
      std::vector<ojson> out{make_message(msg::kTrialConfirm, to_json(record))};
      for (ojson& next : announce_current()) {
        out.push_back(std::move(next));
      }
      return out;
    }
    return {error_message("unknown message type '" + m.type + "'")};
  } catch (const ParseError& e) {
    return {error_message(e.what())};
  } catch (const InvalidQuaternion& e) {
    return {error_message(e.what())};
  } catch (const ProtocolError& e) {
    return {error_message(e.what())};
  }
}

}  // namespace collimator
