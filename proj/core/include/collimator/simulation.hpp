#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "collimator/config.hpp"
#include "collimator/session.hpp"

namespace collimator {

struct SimulationOptions {
  int participants = 1;
  std::uint64_t seed = 0;
  /// Restrict to one widget's blocks.
  std::optional<Widget> only_widget;
  /// Also run training blocks (their records are never logged).
  bool run_training = false;
  /// Worker threads; 0 picks the hardware concurrency. Output does not depend on it.
  unsigned threads = 0;
};

/// Training set plus both arches, built from the config.
TargetSets build_target_sets(const EngineConfig& config, std::uint64_t seed);

/// Start pose for a trial: home position, drill pointing down for maxillary targets.
Pose start_pose(const EngineConfig& config, TargetGroup group);

/// Participant ids are "P01", "P02", ...; odd-numbered participants get set A.
std::string participant_name(int index);

/// One participant through a full SessionPlan, driven by SimulatedOperator
/// with a manual clock advanced by steps * step_ms.
std::vector<TrialRecord> simulate_participant(const EngineConfig& config,
                                              const TargetSets& targets,
                                              const std::string& participant_id,
                                              TreatmentSet set, const SimulationOptions& options);

/// All participants, records concatenated in participant order.
std::vector<TrialRecord> simulate_study(const EngineConfig& config,
                                        const SimulationOptions& options);

}  // namespace collimator
