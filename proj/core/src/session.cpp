#include "collimator/session.hpp"

#include <array>
#include <string>

#include "collimator/errors.hpp"
#include "collimator/random.hpp"

namespace collimator {

std::string_view to_string(Widget widget) { return widget == Widget::ACW ? "ACW" : "GSW"; }

Widget widget_from_string(std::string_view name) {
  if (name == "ACW" || name == "acw") return Widget::ACW;
  if (name == "GSW" || name == "gsw") return Widget::GSW;
  throw ConfigError("unknown widget '" + std::string(name) + "'");
}

std::string_view to_string(TreatmentSet set) { return set == TreatmentSet::A ? "A" : "B"; }

TreatmentSet treatment_set_from_string(std::string_view name) {
  if (name == "A" || name == "a") return TreatmentSet::A;
  if (name == "B" || name == "b") return TreatmentSet::B;
  throw ConfigError("unknown treatment set '" + std::string(name) + "'");
}

std::uint64_t participant_hash(std::string_view participant_id) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : participant_id) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

SessionPlan make_session_plan(std::string participant_id, TreatmentSet set,
                              const TargetSets& targets, std::uint64_t seed) {
  using G = TargetGroup;
  using W = Widget;
  struct Slot {
    W widget;
    G group;
  };
  static constexpr std::array<Slot, 6> kSetA{{{W::GSW, G::Training},
                                              {W::ACW, G::Training},
                                              {W::GSW, G::Mandible},
                                              {W::GSW, G::Maxilla},
                                              {W::ACW, G::Mandible},
                                              {W::ACW, G::Maxilla}}};
  static constexpr std::array<Slot, 6> kSetB{{{W::ACW, G::Training},
                                              {W::GSW, G::Training},
                                              {W::ACW, G::Mandible},
                                              {W::GSW, G::Mandible},
                                              {W::ACW, G::Maxilla},
                                              {W::GSW, G::Maxilla}}};

  SessionPlan plan;
  plan.set = set;
  const std::uint64_t pid = participant_hash(participant_id);
  plan.participant_id = std::move(participant_id);
  const auto& order = set == TreatmentSet::A ? kSetA : kSetB;
  for (std::size_t i = 0; i < order.size(); ++i) {
    Block block;
    block.widget = order[i].widget;
    block.group = order[i].group;
    switch (block.group) {
      case G::Training: block.targets = targets.training; break;
      case G::Mandible: block.targets = targets.mandible; break;
      case G::Maxilla: block.targets = targets.maxilla; break;
    }
    block.seed = derive_seed(seed, {pid, i});
    Rng rng(block.seed);
    rng.shuffle(std::span<Target>(block.targets));
    plan.blocks.push_back(std::move(block));
  }
  return plan;
}

std::chrono::nanoseconds SteadyClock::now() const {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(
      std::chrono::steady_clock::now().time_since_epoch());
}

void fill_metrics(TrialRecord& r, const ErrorState& error) {
  r.pem = error.pem;
  r.pe_x = error.pe.x;
  r.pe_y = error.pe.y;
  r.pe_z = error.pe.z;
  r.aem = error.aem;
  r.ae_x = error.ae_euler.x_deg;
  r.ae_y = error.ae_euler.y_deg;
  r.ae_z = error.ae_euler.z_deg;
  r.swing_deg = error.swing_deg;
}

Session::Session(SessionPlan plan, const Clock& clock, SessionOptions options)
    : plan_(std::move(plan)), clock_(&clock), options_(options) {
  skip_empty_blocks();
}

void Session::skip_empty_blocks() {
  while (block_ < plan_.blocks.size() && trial_ >= plan_.blocks[block_].targets.size()) {
    ++block_;
    trial_ = 0;
  }
}

const Block& Session::current_block() const {
  if (finished()) {
    throw ProtocolError("session is finished");
  }
  return plan_.blocks[block_];
}

const Target& Session::current_target() const { return current_block().targets[trial_]; }

const TrialClock& Session::begin_trial() {
  if (active_) {
    throw ProtocolError("a trial is already active");
  }
  if (finished()) {
    throw ProtocolError("session is finished");
  }
  active_ = TrialClock{block_, trial_, current_target().id, clock_->now()};
  return *active_;
}

double Session::elapsed_ms() const {
  if (!active_) {
    throw ProtocolError("no active trial");
  }
  const auto dt = clock_->now() - active_->displayed_at;
  return std::chrono::duration<double, std::milli>(dt).count();
}

TrialRecord Session::confirm_trial(const Pose& tool, TrialAnnotations annotations) {
  if (!active_) {
    throw ProtocolError("confirm without an active trial");
  }
  const Block& block = plan_.blocks[active_->block];
  const Target& target = block.targets[active_->trial];

  TrialRecord r;
  r.participant_id = plan_.participant_id;
  r.set = plan_.set;
  r.block = active_->block;
  r.widget = block.widget;
  r.target_id = target.id;
  r.group = target.group;
  r.first_of_block = active_->trial == 0;
  r.tt_ms = elapsed_ms();
  fill_metrics(r, compute_error(tool, target.pose));
  r.simulated = annotations.simulated;
  r.timed_out = annotations.timed_out;

  if (!block.training() || options_.log_training) {
    records_.push_back(r);
  }
  active_.reset();
  ++trial_;
  skip_empty_blocks();
  return r;
}

std::vector<TrialRecord> drop_first_trials(std::span<const TrialRecord> records) {
  std::vector<TrialRecord> out;
  out.reserve(records.size());
  for (const TrialRecord& r : records) {
    if (!r.first_of_block) {
      out.push_back(r);
    }
  }
  return out;
}

}  // namespace collimator
