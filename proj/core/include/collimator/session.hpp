#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "collimator/pose.hpp"
#include "collimator/targets.hpp"

namespace collimator {

enum class Widget { ACW, GSW };
enum class TreatmentSet { A, B };

std::string_view to_string(Widget widget);
Widget widget_from_string(std::string_view name);
std::string_view to_string(TreatmentSet set);
TreatmentSet treatment_set_from_string(std::string_view name);

/// One treatment: every target of `group` shown once under `widget`, in `targets` order.
struct Block {
  Widget widget = Widget::ACW;
  TargetGroup group = TargetGroup::Training;
  std::vector<Target> targets;
  std::uint64_t seed = 0;

  [[nodiscard]] bool training() const { return group == TargetGroup::Training; }
};

struct SessionPlan {
  std::string participant_id;
  TreatmentSet set = TreatmentSet::A;
  std::vector<Block> blocks;
};

struct TargetSets {
  std::vector<Target> training;
  std::vector<Target> mandible;
  std::vector<Target> maxilla;
};

/// Latin-square orders:
///   A: GSW training, ACW training, MD-GSW, MX-GSW, MD-ACW, MX-ACW
///   B: ACW training, GSW training, MD-ACW, MD-GSW, MX-ACW, MX-GSW
/// Each block's target order is shuffled from a seed derived from
/// (seed, participant_id, block index).
SessionPlan make_session_plan(std::string participant_id, TreatmentSet set,
                              const TargetSets& targets, std::uint64_t seed);

/// Stable 64-bit hash of a participant id (FNV-1a), used for seed derivation.
std::uint64_t participant_hash(std::string_view participant_id);

/// Time source for task-time measurement; injected so tests control it.
class Clock {
 public:
  virtual ~Clock() = default;
  [[nodiscard]] virtual std::chrono::nanoseconds now() const = 0;
};

class SteadyClock final : public Clock {
 public:
  [[nodiscard]] std::chrono::nanoseconds now() const override;
};

class ManualClock final : public Clock {
 public:
  [[nodiscard]] std::chrono::nanoseconds now() const override { return now_; }
  void advance(std::chrono::nanoseconds dt) { now_ += dt; }

 private:
  std::chrono::nanoseconds now_{0};
};

struct TrialClock {
  std::size_t block = 0;
  std::size_t trial = 0;
  int target_id = 0;
  std::chrono::nanoseconds displayed_at{0};
};

/// One confirmed placement.
struct TrialRecord {
  std::string participant_id;
  TreatmentSet set = TreatmentSet::A;
  std::size_t block = 0;
  Widget widget = Widget::ACW;
  int target_id = 0;
  TargetGroup group = TargetGroup::Training;
  bool first_of_block = false;
  double tt_ms = 0.0;
  double pem = 0.0;
  double pe_x = 0.0;
  double pe_y = 0.0;
  double pe_z = 0.0;
  double aem = 0.0;
  double ae_x = 0.0;
  double ae_y = 0.0;
  double ae_z = 0.0;
  double swing_deg = 0.0;
  bool simulated = false;
  bool timed_out = false;

  bool operator==(const TrialRecord&) const = default;
};

/// Fills the metric fields of `record` from the error at the confirmed pose.
void fill_metrics(TrialRecord& record, const ErrorState& error);

struct TrialAnnotations {
  bool simulated = false;
  bool timed_out = false;
};

struct SessionOptions {
  /// Training trials are run but, matching the study's 30 x 2 x 32 data set,
  /// not logged unless this is set.
  bool log_training = false;
};

/// Walks a SessionPlan one target at a time: begin_trial marks the target
/// display, confirm_trial captures the metrics and advances.
class Session {
 public:
  Session(SessionPlan plan, const Clock& clock, SessionOptions options = {});

  [[nodiscard]] const SessionPlan& plan() const { return plan_; }
  [[nodiscard]] bool finished() const { return block_ >= plan_.blocks.size(); }
  [[nodiscard]] bool trial_active() const { return active_.has_value(); }
  [[nodiscard]] std::size_t block_index() const { return block_; }
  [[nodiscard]] std::size_t trial_index() const { return trial_; }
  [[nodiscard]] const Block& current_block() const;
  [[nodiscard]] const Target& current_target() const;
  [[nodiscard]] std::span<const TrialRecord> records() const { return records_; }

  /// Throws ProtocolError if a trial is already active or the plan is done.
  const TrialClock& begin_trial();

  /// Milliseconds since the active trial's target was displayed.
  [[nodiscard]] double elapsed_ms() const;

  /// Throws ProtocolError when no trial is active.
  TrialRecord confirm_trial(const Pose& tool, TrialAnnotations annotations = {});

 private:
  void skip_empty_blocks();

  SessionPlan plan_;
  const Clock* clock_;
  SessionOptions options_;
  std::size_t block_ = 0;
  std::size_t trial_ = 0;
  std::optional<TrialClock> active_;
  std::vector<TrialRecord> records_;
};

/// Removes the first trial of each block (first_of_block == true).
std::vector<TrialRecord> drop_first_trials(std::span<const TrialRecord> records);

}  // namespace collimator
