#include "collimator/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <thread>

#include "collimator/errors.hpp"
#include "collimator/operator.hpp"

namespace collimator {

TargetSets build_target_sets(const EngineConfig& config, std::uint64_t seed) {
  TargetSets sets;
  sets.training = training_targets(derive_seed(seed, {0x7261696eULL}), config.training.count,
                                   config.training.radius_mm, config.training.center);
  sets.mandible = arch_targets(TargetGroup::Mandible, config.arch);
  sets.maxilla = arch_targets(TargetGroup::Maxilla, config.arch);
  return sets;
}

Pose start_pose(const EngineConfig& config, TargetGroup group) {
  Pose p;
  p.position = config.home_position;
  if (group == TargetGroup::Maxilla) {
    p.orientation = UnitQuat::from_axis_angle(kUnitX, 180.0);
  }
  return p;
}

std::string participant_name(int index) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "P%02d", index);
  return buf;
}

std::vector<TrialRecord> simulate_participant(const EngineConfig& config,
                                              const TargetSets& targets,
                                              const std::string& participant_id,
                                              TreatmentSet set, const SimulationOptions& options) {
  SessionPlan plan = make_session_plan(participant_id, set, targets, options.seed);
  std::erase_if(plan.blocks, [&](const Block& b) {
    return (b.training() && !options.run_training) ||
           (options.only_widget && b.widget != *options.only_widget);
  });

  ManualClock clock;
  Session session(std::move(plan), clock);
  SimulatedOperator op(config.op, config.ecws, config.gsw, config.placement,
                       config.display_scale);
  const std::uint64_t pid = participant_hash(participant_id);

  while (!session.finished()) {
    const Block& block = session.current_block();
    const Target target = session.current_target();
    const TrialClock& trial = session.begin_trial();
    const std::uint64_t trial_seed =
        derive_seed(options.seed, {pid, static_cast<std::uint64_t>(block.widget),
                                   static_cast<std::uint64_t>(block.group), trial.trial});
    const TrialOutcome outcome =
        op.run_trial(block.widget, start_pose(config, target.group), target.pose, trial_seed);
    clock.advance(std::chrono::duration_cast<std::chrono::nanoseconds>(
        std::chrono::duration<double, std::milli>(outcome.tt_ms)));
    session.confirm_trial(outcome.final_pose, TrialAnnotations{true, outcome.timed_out});
  }
  return {session.records().begin(), session.records().end()};
}

std::vector<TrialRecord> simulate_study(const EngineConfig& config,
                                        const SimulationOptions& options) {
  if (options.participants < 1) {
    throw ConfigError("need at least one participant");
  }
  config.validate();
  const TargetSets targets = build_target_sets(config, options.seed);
  const auto n = static_cast<std::size_t>(options.participants);
  std::vector<std::vector<TrialRecord>> per_participant(n);

  unsigned threads = options.threads != 0 ? options.threads : std::thread::hardware_concurrency();
  threads = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(n));

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      const int index = static_cast<int>(i) + 1;
      const TreatmentSet set = index % 2 == 1 ? TreatmentSet::A : TreatmentSet::B;
      per_participant[i] =
          simulate_participant(config, targets, participant_name(index), set, options);
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back(worker);
    }
  }

  std::vector<TrialRecord> all;
  for (auto& records : per_participant) {
    all.insert(all.end(), records.begin(), records.end());
  }
  return all;
}

}  // namespace collimator
