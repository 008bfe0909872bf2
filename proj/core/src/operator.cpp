#include "collimator/operator.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "collimator/errors.hpp"

namespace collimator {

std::string_view to_string(AttentionPolicy policy) {
  return policy == AttentionPolicy::RoundRobin ? "round_robin" : "largest_normalized";
}

AttentionPolicy attention_policy_from_string(std::string_view name) {
  if (name == "largest_normalized") return AttentionPolicy::LargestNormalized;
  if (name == "round_robin") return AttentionPolicy::RoundRobin;
  throw ConfigError("unknown attention policy '" + std::string(name) + "'");
}

void OperatorParams::validate() const {
  if (!(motion_gain > 0.0 && motion_gain < 1.0)) {
    throw ConfigError("operator motion gain must be in (0, 1)");
  }
  if (!(motor_noise_mm >= 0.0) || !(motor_noise_deg >= 0.0) || !(perception_noise_mm >= 0.0) ||
      !(perception_noise_deg >= 0.0)) {
    throw ConfigError("operator noise levels must be non-negative");
  }
  if (reaction_steps < 1 || max_steps < 1) {
    throw ConfigError("operator reaction_steps and max_steps must be positive");
  }
  if (!(step_ms >= 0.0)) {
    throw ConfigError("operator step duration must be non-negative");
  }
}

SimulatedOperator::SimulatedOperator(OperatorParams params, AcwConfigs configs, GswParams gsw,
                                     WidgetPlacement placement, double display_scale)
    : params_(params),
      configs_(ordered_configs(configs)),
      gsw_(gsw),
      placement_(placement),
      display_scale_(display_scale),
      rng_(params.seed) {
  params_.validate();
  gsw_.validate();
}

void SimulatedOperator::reseed(std::uint64_t seed) {
  rng_ = Rng(seed);
  round_robin_next_ = 0;
}

Pose SimulatedOperator::add_tremor(Pose pose) {
  if (params_.motor_noise_mm > 0.0) {
    pose.position += Vec3{rng_.normal(0.0, params_.motor_noise_mm),
                          rng_.normal(0.0, params_.motor_noise_mm),
                          rng_.normal(0.0, params_.motor_noise_mm)};
  }
  if (params_.motor_noise_deg > 0.0) {
    const double pitch = rng_.normal(0.0, params_.motor_noise_deg);
    const double roll = rng_.normal(0.0, params_.motor_noise_deg);
    pose.orientation = UnitQuat::from_axis_angle(kUnitX, pitch) *
                       UnitQuat::from_axis_angle(kUnitZ, roll) * pose.orientation;
  }
  return pose;
}

Pose SimulatedOperator::step_acw(const Pose& tool, const Pose& target, const AcwFrame& frame) {
  const EcwState* chosen = nullptr;
  if (params_.policy == AttentionPolicy::LargestNormalized) {
    double best = -1.0;
    for (const EcwState& s : frame.ecws) {
      if (!s.visible) {
        continue;
      }
      const double scale = s.config.acce > 0.0 ? s.config.acce : std::numeric_limits<double>::min();
      const double ratio = std::abs(s.e) / scale;
      if (ratio > best) {
        best = ratio;
        chosen = &s;
      }
    }
  } else {
    for (std::size_t i = 0; i < frame.ecws.size(); ++i) {
      const std::size_t idx = (round_robin_next_ + i) % frame.ecws.size();
      if (frame.ecws[idx].visible) {
        chosen = &frame.ecws[idx];
        round_robin_next_ = idx + 1;
        break;
      }
    }
  }

  Pose next = tool;
  if (chosen != nullptr) {
    const double delta = params_.motion_gain * chosen->e;
    switch (chosen->config.kind) {
      case EcwKind::PEX: next.position.x -= delta; break;
      case EcwKind::PEY: next.position.y -= delta; break;
      case EcwKind::PEZ: next.position.z -= delta; break;
      case EcwKind::AEX: {
        // ae = Rz Ry Rx(ex); right-multiplying by Rx(-delta) leaves ey, ez intact.
        const UnitQuat& tq = target.orientation;
        next.orientation =
            tool.orientation * tq.inverse() * UnitQuat::from_axis_angle(kUnitX, -delta) * tq;
        break;
      }
      case EcwKind::AEZ:
        next.orientation = UnitQuat::from_axis_angle(kUnitZ, -delta) * tool.orientation;
        break;
    }
  }
  return add_tremor(next);
}

Pose SimulatedOperator::perceive(const Pose& target) {
  Pose p = target;
  if (params_.perception_noise_mm > 0.0) {
    p.position += Vec3{rng_.normal(0.0, params_.perception_noise_mm),
                       rng_.normal(0.0, params_.perception_noise_mm),
                       rng_.normal(0.0, params_.perception_noise_mm)};
  }
  if (params_.perception_noise_deg > 0.0) {
    const double pitch = rng_.normal(0.0, params_.perception_noise_deg);
    const double roll = rng_.normal(0.0, params_.perception_noise_deg);
    p.orientation = UnitQuat::from_axis_angle(kUnitX, pitch) *
                    UnitQuat::from_axis_angle(kUnitZ, roll) * p.orientation;
  }
  return p;
}

Pose SimulatedOperator::step_gsw(const Pose& tool, const Pose& perceived_target) {
  const double k = params_.motion_gain;
  Pose next = tool;
  next.position += (perceived_target.position - tool.position) * k;

  const Vec3 axis_now = tool.orientation.rotate(kToolAxis);
  const Vec3 axis_goal = perceived_target.orientation.rotate(kToolAxis);
  const double angle = angle_between_deg(axis_now, axis_goal);
  if (angle > 1e-12) {
    Vec3 pivot = cross(axis_now, axis_goal);
    if (pivot.norm() < 1e-12) {
      pivot = tool.orientation.rotate(kUnitX);
    }
    next.orientation = UnitQuat::from_axis_angle(pivot, k * angle) * tool.orientation;
  }
  return add_tremor(next);
}

TrialOutcome SimulatedOperator::run_trial(Widget widget, const Pose& start, const Pose& target,
                                          std::uint64_t trial_seed) {
  reseed(trial_seed);
  TrialOutcome out;
  Pose tool = start;
  const Pose perceived = widget == Widget::GSW ? perceive(target) : target;

  while (true) {
    AcwFrame frame;
    if (widget == Widget::ACW) {
      frame = acw_frame(tool, target, configs_, placement_, display_scale_);
      if (frame.fully_collimated) {
        break;
      }
    } else {
      const double pos = (tool.position - perceived.position).norm();
      const double ang = angle_between_deg(tool.orientation.rotate(kToolAxis),
                                           perceived.orientation.rotate(kToolAxis));
      if (gsw_color(pos, ang, gsw_) == GswColor::Green) {
        break;
      }
    }
    if (out.steps + params_.reaction_steps > params_.max_steps) {
      out.timed_out = true;
      break;
    }
    tool = widget == Widget::ACW ? step_acw(tool, target, frame) : step_gsw(tool, perceived);
    out.steps += params_.reaction_steps;
  }

  out.final_pose = tool;
  out.tt_ms = out.steps * params_.step_ms;
  out.error = compute_error(tool, target);
  return out;
}

}  // namespace collimator
