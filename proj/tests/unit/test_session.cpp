#include <gtest/gtest.h>

#include <algorithm>
#include <chrono>
#include <map>
#include <set>
#include <utility>

#include "collimator/errors.hpp"
#include "collimator/session.hpp"

using namespace collimator;
using namespace std::chrono_literals;

namespace {

TargetSets small_sets() {
  TargetSets s;
  s.training = training_targets(1, 4);
  s.mandible = arch_targets(TargetGroup::Mandible);
  s.maxilla = arch_targets(TargetGroup::Maxilla);
  return s;
}

using Slot = std::pair<Widget, TargetGroup>;

std::vector<Slot> slots(const SessionPlan& p) {
  std::vector<Slot> out;
  for (const Block& b : p.blocks) out.emplace_back(b.widget, b.group);
  return out;
}

}  // namespace

TEST(SessionPlan, LatinSquareOrders) {
  using W = Widget;
  using G = TargetGroup;
  const auto sets = small_sets();
  const auto a = make_session_plan("P01", TreatmentSet::A, sets, 3);
  const auto b = make_session_plan("P02", TreatmentSet::B, sets, 3);
  const std::vector<Slot> want_a{{W::GSW, G::Training}, {W::ACW, G::Training},
                                 {W::GSW, G::Mandible}, {W::GSW, G::Maxilla},
                                 {W::ACW, G::Mandible}, {W::ACW, G::Maxilla}};
  const std::vector<Slot> want_b{{W::ACW, G::Training}, {W::GSW, G::Training},
                                 {W::ACW, G::Mandible}, {W::GSW, G::Mandible},
                                 {W::ACW, G::Maxilla},  {W::GSW, G::Maxilla}};
  EXPECT_EQ(slots(a), want_a);
  EXPECT_EQ(slots(b), want_b);
  auto sa = slots(a), sb = slots(b);
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  EXPECT_EQ(sa, sb);
  EXPECT_EQ(a.participant_id, "P01");
  EXPECT_EQ(b.set, TreatmentSet::B);
}

TEST(SessionPlan, BlocksArePermutationsAndSeeded) {
  const auto sets = small_sets();
  const auto p1 = make_session_plan("P07", TreatmentSet::A, sets, 11);
  const auto p2 = make_session_plan("P07", TreatmentSet::A, sets, 11);
  const auto p3 = make_session_plan("P08", TreatmentSet::A, sets, 11);
  bool any_diff = false;
  for (std::size_t i = 0; i < p1.blocks.size(); ++i) {
    std::multiset<int> got, want;
    for (const auto& t : p1.blocks[i].targets) got.insert(t.id);
    const auto& src = p1.blocks[i].group == TargetGroup::Training ? sets.training
                      : p1.blocks[i].group == TargetGroup::Mandible ? sets.mandible
                                                                    : sets.maxilla;
    for (const auto& t : src) want.insert(t.id);
    EXPECT_EQ(got, want);
    for (std::size_t j = 0; j < p1.blocks[i].targets.size(); ++j) {
      EXPECT_EQ(p1.blocks[i].targets[j].id, p2.blocks[i].targets[j].id);
      any_diff = any_diff || p1.blocks[i].targets[j].id != p3.blocks[i].targets[j].id;
    }
  }
  EXPECT_TRUE(any_diff);
}

TEST(ParticipantHash, Fnv1a) {
  EXPECT_EQ(participant_hash(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(participant_hash("a"), 0xaf63dc4c8601ec8cULL);
}

TEST(Names, RoundTrip) {
  EXPECT_EQ(widget_from_string("ACW"), Widget::ACW);
  EXPECT_EQ(widget_from_string(to_string(Widget::GSW)), Widget::GSW);
  EXPECT_EQ(treatment_set_from_string("b"), TreatmentSet::B);
  EXPECT_THROW(widget_from_string("XYZ"), ConfigError);
  EXPECT_THROW(treatment_set_from_string("C"), ConfigError);
}

TEST(Session, TaskTimeFromInjectedClock) {
  ManualClock clock;
  Session s(make_session_plan("P01", TreatmentSet::A, small_sets(), 1), clock,
            {.log_training = true});
  s.begin_trial();
  clock.advance(1234ms);
  EXPECT_DOUBLE_EQ(s.elapsed_ms(), 1234.0);
  const Pose at = s.current_target().pose;
  const TrialRecord r = s.confirm_trial(at);
  EXPECT_DOUBLE_EQ(r.tt_ms, 1234.0);
  EXPECT_EQ(r.pem, 0.0);
  EXPECT_LT(r.aem, 1e-9);
  EXPECT_TRUE(r.first_of_block);
  EXPECT_EQ(r.widget, Widget::GSW);
  EXPECT_EQ(r.group, TargetGroup::Training);
  EXPECT_EQ(s.records().size(), 1u);
}

TEST(Session, ProtocolErrors) {
  ManualClock clock;
  Session s(make_session_plan("P01", TreatmentSet::A, small_sets(), 1), clock);
  EXPECT_THROW(s.confirm_trial({}), ProtocolError);
  EXPECT_THROW((void)s.elapsed_ms(), ProtocolError);
  s.begin_trial();
  EXPECT_THROW(s.begin_trial(), ProtocolError);
}

TEST(Session, WalksEveryTrialAndSkipsTrainingLog) {
  ManualClock clock;
  const auto sets = small_sets();
  Session s(make_session_plan("P02", TreatmentSet::B, sets, 9), clock);
  std::size_t trials = 0;
  std::map<std::size_t, int> firsts;
  while (!s.finished()) {
    const TrialClock& c = s.begin_trial();
    EXPECT_EQ(c.block, s.block_index());
    clock.advance(10ms);
    const TrialRecord r = s.confirm_trial(Pose{});
    if (r.first_of_block) ++firsts[r.block];
    ++trials;
  }
  EXPECT_EQ(trials, 2 * sets.training.size() + 64);
  EXPECT_EQ(s.records().size(), 64u);
  for (const auto& r : s.records()) EXPECT_NE(r.group, TargetGroup::Training);
  EXPECT_EQ(firsts.size(), 6u);
  EXPECT_THROW(s.begin_trial(), ProtocolError);
  EXPECT_THROW((void)s.current_target(), ProtocolError);
  EXPECT_EQ(drop_first_trials(s.records()).size(), 60u);
}

TEST(Session, AnnotationsCarryThrough) {
  ManualClock clock;
  Session s(make_session_plan("P01", TreatmentSet::B, small_sets(), 1), clock,
            {.log_training = true});
  s.begin_trial();
  const auto r = s.confirm_trial({}, {.simulated = true, .timed_out = true});
  EXPECT_TRUE(r.simulated);
  EXPECT_TRUE(r.timed_out);
}

TEST(DropFirstTrials, SyntheticStudyKeeps1800) {
  std::vector<TrialRecord> all;
  for (int p = 0; p < 30; ++p) {
    for (std::size_t block = 0; block < 4; ++block) {
      for (int t = 0; t < 16; ++t) {
        TrialRecord r;
        r.block = block;
        r.first_of_block = t == 0;
        all.push_back(r);
      }
    }
  }
  ASSERT_EQ(all.size(), 30u * 2 * 32);
  EXPECT_EQ(drop_first_trials(all).size(), 1800u);
}
