#include <gtest/gtest.h>

#include <chrono>
#include <string>
#include <vector>

#include "collimator/frame_service.hpp"

using namespace collimator;
using namespace std::chrono_literals;

namespace {

SessionPlan small_plan() {
  TargetSets sets;
  sets.training = training_targets(3, 2);
  sets.mandible = arch_targets(TargetGroup::Mandible);
  sets.maxilla = arch_targets(TargetGroup::Maxilla);
  return make_session_plan("P01", TreatmentSet::A, sets, 5);
}

std::string pose_line(std::string_view type, const Pose& p) {
  return encode(make_message(type, to_json(p)));
}

struct Fixture : ::testing::Test {
  ManualClock clock;
  std::vector<TrialRecord> sunk;
  FrameService service{EngineConfig{}, small_plan(), clock,
                       [this](const TrialRecord& r) { sunk.push_back(r); }};
};

}  // namespace

TEST_F(Fixture, StartAnnouncesFirstTarget) {
  const auto out = service.start();
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0]["type"], "target");
  EXPECT_EQ(out[0]["payload"]["show_target"], true);
  EXPECT_EQ(out[1]["type"], "trial_begin");
  EXPECT_EQ(out[1]["payload"]["widget"], "GSW");
  EXPECT_TRUE(service.session().trial_active());
}

TEST_F(Fixture, PoseYieldsWidgetFrame) {
  service.start();
  const auto out = service.handle_line(pose_line("pose", {}));
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0]["type"], "gsw_frame");
}

TEST_F(Fixture, MalformedInputDoesNotBreakService) {
  service.start();
  for (std::string_view bad : {"{", "[]", R"({"type":"warp"})", R"({"type":"pose"})",
                               R"({"type":"pose","payload":{"position":[0,0,0],"orientation":[3,0,0,0]}})"}) {
    const auto out = service.handle_line(bad);
    ASSERT_EQ(out.size(), 1u);
    EXPECT_EQ(out[0]["type"], "error") << bad;
  }
  EXPECT_EQ(service.handle_line(pose_line("pose", {}))[0]["type"], "gsw_frame");
}

TEST_F(Fixture, ConfirmWithoutPoseIsAnError) {
  service.start();
  EXPECT_EQ(service.handle_line(R"({"type":"confirm"})")[0]["type"], "error");
}

TEST_F(Fixture, ReadOnlyClientsMayOnlyQuery) {
  service.start();
  EXPECT_EQ(service.handle_line(pose_line("pose", {}), true)[0]["type"], "error");
  EXPECT_EQ(service.handle_line(R"({"type":"status"})", true)[0]["type"], "status");
  EXPECT_EQ(service.handle_line(R"({"type":"target"})", true)[0]["type"], "target");
}

TEST_F(Fixture, ConfirmAppendsRecordOnlyForStudyBlocks) {
  service.start();
  // Two training blocks of two targets each produce no rows.
  for (int i = 0; i < 4; ++i) {
    const auto out = service.handle_line(pose_line("confirm", {}));
    EXPECT_EQ(out[0]["type"], "trial_confirm");
  }
  EXPECT_TRUE(sunk.empty());
  const Pose target = service.session().current_target().pose;
  clock.advance(2500ms);
  service.handle_line(pose_line("pose", target));
  const auto out = service.handle_line(R"({"type":"confirm","payload":null})");
  ASSERT_EQ(sunk.size(), 1u);
  EXPECT_DOUBLE_EQ(sunk[0].tt_ms, 2500.0);
  EXPECT_EQ(sunk[0].pem, 0.0);
  EXPECT_EQ(out[0]["payload"]["tt_ms"], 2500.0);
  EXPECT_EQ(out[1]["payload"]["show_target"], false);
  EXPECT_EQ(service.status()["payload"]["records"], 1u);
}

TEST_F(Fixture, SessionEndsAfterLastTrial) {
  service.start();
  std::vector<ojson> last;
  for (int i = 0; i < 4 + 64; ++i) last = service.handle_line(pose_line("trial_confirm", {}));
  EXPECT_EQ(last.back()["type"], "session_end");
  EXPECT_EQ(sunk.size(), 64u);
  EXPECT_EQ(service.status()["payload"]["finished"], true);
  EXPECT_EQ(service.handle_line(pose_line("pose", {}))[0]["type"], "error");
  EXPECT_EQ(service.handle_line(pose_line("confirm", {}))[0]["type"], "error");
}
