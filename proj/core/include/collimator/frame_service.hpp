#pragma once

#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "collimator/config.hpp"
#include "collimator/protocol.hpp"
#include "collimator/session.hpp"

namespace collimator {

/// Transport-independent engine side of the frame protocol. Feed it one
/// line at a time; it answers with zero or more messages. The socket and
/// stdio servers are thin loops around this class.
///
/// Client messages:
///   {"type":"pose","payload":<pose>}            -> acw_frame | gsw_frame
///   {"type":"confirm","payload":<pose>|null}    -> trial_confirm, then target + trial_begin
///                                                  or session_end
///   {"type":"status"}                           -> status
///   {"type":"target"}                           -> target (current)
/// Anything else, or malformed input, yields an "error" message; the
/// service stays usable.
class FrameService {
 public:
  using RecordSink = std::function<void(const TrialRecord&)>;

  FrameService(EngineConfig config, SessionPlan plan, const Clock& clock,
               RecordSink on_record = {});

  /// Messages announcing the first target; call once when a client attaches.
  std::vector<ojson> start();

  /// `read_only` connections may only query status and the current target.
  std::vector<ojson> handle_line(std::string_view line, bool read_only = false);

  [[nodiscard]] const Session& session() const { return session_; }

  [[nodiscard]] ojson status() const;

 private:
  std::vector<ojson> announce_current();
  ojson frame_for(const Pose& tool) const;

  EngineConfig config_;
  Session session_;
  RecordSink on_record_;
  std::optional<Pose> last_pose_;
  bool started_ = false;
};

ojson error_message(std::string_view what);

}  // namespace collimator
