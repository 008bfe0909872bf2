#pragma once

#include <cstdint>
#include <string_view>

#include "collimator/ecw.hpp"
#include "collimator/gsw.hpp"
#include "collimator/pose.hpp"
#include "collimator/random.hpp"
#include "collimator/session.hpp"

namespace collimator {

/// Which visible ECW the simulated operator works on next.
enum class AttentionPolicy {
  /// Largest |e| / acce first.
  LargestNormalized,
  /// Cycle PEX..AEZ, skipping hidden components.
  RoundRobin,
};

std::string_view to_string(AttentionPolicy policy);
AttentionPolicy attention_policy_from_string(std::string_view name);

struct OperatorParams {
  /// Fraction of the perceived error removed per movement, 0 < k < 1.
  double motion_gain = 0.5;
  /// Per-step hand tremor, applied to X/Y/Z and to world pitch/roll.
  double motor_noise_mm = 0.2;
  double motor_noise_deg = 0.2;
  /// Misjudgement of the target pose when reading the GSW. Drawn once per
  /// trial: the operator converges on the misjudged pose, not on noise.
  double perception_noise_mm = 2.0;
  double perception_noise_deg = 2.0;
  /// Steps consumed by each perceive-decide-move cycle.
  int reaction_steps = 1;
  int max_steps = 2000;
  double step_ms = 50.0;
  AttentionPolicy policy = AttentionPolicy::LargestNormalized;
  std::uint64_t seed = 0;

  void validate() const;
};

struct TrialOutcome {
  Pose final_pose;
  int steps = 0;
  bool timed_out = false;
  double tt_ms = 0.0;
  ErrorState error;
};

/// Headless stand-in for a human operator. It is a test oracle for the
/// guidance loop, not a model of human cognition: it reads widget frames,
/// moves the tool proportionally and confirms by widget-specific rules.
class SimulatedOperator {
 public:
  SimulatedOperator(OperatorParams params, AcwConfigs configs = default_acw_configs(),
                    GswParams gsw = {}, WidgetPlacement placement = {},
                    double display_scale = kDefaultDisplayScale);

  [[nodiscard]] const OperatorParams& params() const { return params_; }

  /// Restarts the noise stream; run_trial calls this with the trial seed.
  void reseed(std::uint64_t seed);

  /// Corrects the single visible ECW chosen by the attention policy by a
  /// factor k, then adds tremor. `target` is only used to carry out a
  /// rotation about the error's own pitch axis.
  Pose step_acw(const Pose& tool, const Pose& target, const AcwFrame& frame);

  /// Moves position and drill axis a fraction k toward `perceived_target`.
  /// Twist about the drill axis is left alone.
  Pose step_gsw(const Pose& tool, const Pose& perceived_target);

  /// Samples the operator's misjudged view of `target`.
  Pose perceive(const Pose& target);

  /// ACW: confirm when the frame is fully collimated. GSW: confirm when the
  /// perceived position and axis errors are under the colour thresholds.
  TrialOutcome run_trial(Widget widget, const Pose& start, const Pose& target,
                         std::uint64_t trial_seed);

 private:
  Pose add_tremor(Pose pose);

  OperatorParams params_;
  AcwConfigs configs_;
  GswParams gsw_;
  WidgetPlacement placement_;
  double display_scale_;
  Rng rng_;
  std::size_t round_robin_next_ = 0;
};

}  // namespace collimator
