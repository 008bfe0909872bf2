#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "collimator/ecw.hpp"
#include "collimator/errors.hpp"
#include "collimator/random.hpp"
#include "oracles.hpp"

using namespace collimator;

namespace {

EcwConfig config_for(EcwKind kind) {
  return default_acw_configs()[static_cast<std::size_t>(kind)];
}

// Piecewise reference written from the transfer function's definition.
double reference_cs(double e, double gain, double acce, double mdt) {
  const double m = std::abs(e);
  if (m <= acce) return 0.0;
  return gain * std::min(m, mdt);
}

}  // namespace

TEST(EcwConfig, Defaults) {
  const AcwConfigs c = default_acw_configs();
  for (EcwKind k : {EcwKind::PEX, EcwKind::PEY, EcwKind::PEZ}) {
    const auto& cfg = c[static_cast<std::size_t>(k)];
    EXPECT_EQ(cfg.kind, k);
    EXPECT_EQ(cfg.gain, 50.0);
    EXPECT_EQ(cfg.acce, 2.0);
    EXPECT_EQ(cfg.mdt, 50.0);
  }
  for (EcwKind k : {EcwKind::AEX, EcwKind::AEZ}) {
    const auto& cfg = c[static_cast<std::size_t>(k)];
    EXPECT_EQ(cfg.gain, 0.1);
    EXPECT_EQ(cfg.acce, 2.0);
    EXPECT_EQ(cfg.mdt, 45.0);
  }
  EXPECT_EQ(c[0].color, "red");
  EXPECT_EQ(c[1].color, "green");
  EXPECT_EQ(c[2].color, "blue");
}

TEST(EcwConfig, ValidateRejectsBadParameters) {
  EcwConfig cfg = config_for(EcwKind::PEX);
  cfg.gain = 0.0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = config_for(EcwKind::PEX);
  cfg.acce = -1.0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = config_for(EcwKind::PEX);
  cfg.mdt = cfg.acce;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg.mdt = NAN;
  EXPECT_THROW(cfg.validate(), ConfigError);
}

TEST(EcwKindNames, RoundTrip) {
  for (EcwKind k : kEcwKinds) EXPECT_EQ(ecw_kind_from_string(to_string(k)), k);
  EXPECT_THROW(ecw_kind_from_string("PEW"), ConfigError);
}

TEST(CollimationSeparation, PositionalBranches) {
  const EcwConfig p = config_for(EcwKind::PEX);
  EXPECT_EQ(collimation_separation(0.0, p), 0.0);
  EXPECT_EQ(collimation_separation(1.0, p), 0.0);
  EXPECT_EQ(collimation_separation(2.0, p), 0.0);
  EXPECT_EQ(collimation_separation(10.0, p), 500.0);
  EXPECT_EQ(collimation_separation(-10.0, p), 500.0);
  EXPECT_EQ(collimation_separation(50.0, p), 2500.0);
  EXPECT_EQ(collimation_separation(60.0, p), 2500.0);
}

TEST(CollimationSeparation, AngularBranches) {
  const EcwConfig a = config_for(EcwKind::AEX);
  EXPECT_EQ(collimation_separation(1.9, a), 0.0);
  EXPECT_EQ(collimation_separation(3.0, a), 0.3);
  EXPECT_EQ(collimation_separation(-3.0, a), 0.3);
  EXPECT_EQ(collimation_separation(45.0, a), 4.5);
  EXPECT_EQ(collimation_separation(90.0, a), 4.5);
}

TEST(CollimationSeparation, JumpAtDeadbandEdge) {
  const EcwConfig p = config_for(EcwKind::PEY);
  EXPECT_EQ(collimation_separation(2.0, p), 0.0);
  EXPECT_NEAR(collimation_separation(std::nextafter(2.0, 3.0), p), 100.0, 1e-9);
}

TEST(CollimationSeparation, MatchesReferenceMonotoneSymmetricClamped) {
  Rng rng(8);
  for (EcwKind k : kEcwKinds) {
    const EcwConfig cfg = config_for(k);
    std::vector<double> es;
    for (int i = 0; i < 2000; ++i) es.push_back(rng.uniform(0.0, 2.0 * cfg.mdt));
    std::sort(es.begin(), es.end());
    double prev = 0.0;
    for (double e : es) {
      const double cs = collimation_separation(e, cfg);
      EXPECT_NEAR(cs, reference_cs(e, cfg.gain, cfg.acce, cfg.mdt), 1e-12 * (1 + cs));
      EXPECT_EQ(cs, collimation_separation(-e, cfg));
      EXPECT_GE(cs, prev);
      EXPECT_LE(cs, cfg.gain * cfg.mdt + 1e-12);
      prev = cs;
    }
  }
}

TEST(ComponentError, Mapping) {
  ErrorState err;
  err.pe = {1, 2, 3};
  err.ae_euler = {4, 5, 6, false};
  EXPECT_EQ(component_error(err, EcwKind::PEX), 1);
  EXPECT_EQ(component_error(err, EcwKind::PEY), 2);
  EXPECT_EQ(component_error(err, EcwKind::PEZ), 3);
  EXPECT_EQ(component_error(err, EcwKind::AEX), 4);
  EXPECT_EQ(component_error(err, EcwKind::AEZ), 6);
}

TEST(EcwState, VisibilityAndAnchors) {
  ErrorState err;
  err.pe = {-10, 1, 0};
  const EcwState sx = ecw_state(err, config_for(EcwKind::PEX), 0.1);
  EXPECT_TRUE(sx.visible);
  EXPECT_FALSE(sx.collimated);
  EXPECT_EQ(sx.cs, 500.0);
  // Anchor A lies on the negative side for a negative error.
  EXPECT_NEAR(sx.anchor_a.position.x, -25.0, 1e-12);
  EXPECT_NEAR(sx.anchor_b.position.x, 25.0, 1e-12);
  EXPECT_NEAR((sx.anchor_a.position - sx.anchor_b.position).norm(), sx.cs * 0.1, 1e-12);
  // A faces B: its local +X points toward B.
  const Vec3 facing = sx.anchor_a.orientation.rotate(kUnitX);
  EXPECT_NEAR(facing.x, 1.0, 1e-12);

  const EcwState sy = ecw_state(err, config_for(EcwKind::PEY), 0.1);
  EXPECT_FALSE(sy.visible);
  EXPECT_TRUE(sy.collimated);
  EXPECT_EQ(sy.cs, 0.0);
  EXPECT_EQ(sy.anchor_a.position, sy.anchor_b.position);
  EXPECT_THROW(ecw_state(err, config_for(EcwKind::PEX), 0.0), ConfigError);
}

TEST(EcwState, AngularDirections) {
  EXPECT_EQ(motion_direction(EcwKind::PEX), kUnitX);
  EXPECT_EQ(motion_direction(EcwKind::PEY), kUnitY);
  EXPECT_EQ(motion_direction(EcwKind::PEZ), kUnitZ);
  EXPECT_EQ(motion_direction(EcwKind::AEX), kUnitY);
  EXPECT_EQ(motion_direction(EcwKind::AEZ), kUnitX);
}

TEST(OrderedConfigs, ReordersAndRejects) {
  AcwConfigs c = default_acw_configs();
  std::vector<EcwConfig> shuffled(c.rbegin(), c.rend());
  const AcwConfigs o = ordered_configs(shuffled);
  for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(o[i].kind, kEcwKinds[i]);
  shuffled.pop_back();
  EXPECT_THROW(ordered_configs(shuffled), ConfigError);
  shuffled.push_back(c[1]);
  EXPECT_THROW(ordered_configs(shuffled), ConfigError);
}

TEST(AcwFrame, WidgetOriginAboveTool) {
  const Pose tool{{1, 2, 3}, UnitQuat::from_axis_angle(kUnitX, 90)};
  const AcwFrame f = acw_frame(tool, tool, default_acw_configs());
  // Tool +Y rotated by 90 about X is world +Z.
  EXPECT_NEAR(f.widget_origin.position.x, 1.0, 1e-12);
  EXPECT_NEAR(f.widget_origin.position.y, 2.0, 1e-12);
  EXPECT_NEAR(f.widget_origin.position.z, 43.0, 1e-12);
  EXPECT_EQ(f.widget_origin.orientation, UnitQuat{});
  EXPECT_TRUE(f.fully_collimated);
  for (const EcwState& s : f.ecws) EXPECT_FALSE(s.visible);
}

TEST(AcwFrame, VisibilityMatchesComponents) {
  Rng rng(21);
  const AcwConfigs cfg = default_acw_configs();
  for (int i = 0; i < 3000; ++i) {
    const Pose target = collimator::testing::random_pose(rng, 100.0);
    Pose tool = target;
    tool.position += rng.unit_vector() * rng.uniform(0, 6);
    tool.orientation =
        UnitQuat::from_axis_angle(rng.unit_vector(), rng.uniform(0, 6)) * tool.orientation;
    const AcwFrame f = acw_frame(tool, target, cfg, {}, 0.25);
    const ErrorState err = compute_error(tool, target);
    bool all = true;
    for (std::size_t k = 0; k < 5; ++k) {
      const double e = component_error(err, kEcwKinds[k]);
      EXPECT_EQ(f.ecws[k].visible, std::abs(e) > cfg[k].acce);
      EXPECT_NEAR((f.ecws[k].anchor_a.position - f.ecws[k].anchor_b.position).norm(),
                  f.ecws[k].cs * 0.25, 1e-9);
      // Symbol pair is centred on the widget origin.
      EXPECT_NEAR((f.ecws[k].anchor_a.position + f.ecws[k].anchor_b.position).norm(), 0.0,
                  1e-9);
      all = all && std::abs(e) <= cfg[k].acce;
    }
    EXPECT_EQ(f.fully_collimated, all);
  }
}

namespace {

std::vector<EcwKind> visible_kinds(const AcwFrame& f) {
  std::vector<EcwKind> out;
  for (const EcwState& s : f.ecws) {
    if (s.visible) out.push_back(s.config.kind);
  }
  return out;
}

}  // namespace

TEST(AcwFrame, SingleAxisOffsetShowsOnlyThatWidget) {
  const Pose target{};
  const AcwFrame f = acw_frame({{10, 0, 0}, UnitQuat{}}, target, default_acw_configs());
  EXPECT_EQ(visible_kinds(f), std::vector<EcwKind>{EcwKind::PEX});
  EXPECT_EQ(f.ecws[0].cs, 500.0);
  EXPECT_NEAR(f.ecws[0].anchor_a.position.x, 250.0 * kDefaultDisplayScale, 1e-12);
  EXPECT_NEAR(f.ecws[0].anchor_b.position.x, -250.0 * kDefaultDisplayScale, 1e-12);
}

TEST(AcwFrame, HeightAndPitchErrorShowTwoWidgets) {
  const Pose tool{{0, -3, 0}, UnitQuat::from_axis_angle(kUnitX, 10)};
  const AcwFrame f = acw_frame(tool, Pose{}, default_acw_configs());
  EXPECT_EQ(visible_kinds(f), (std::vector<EcwKind>{EcwKind::PEY, EcwKind::AEX}));
  EXPECT_NEAR(f.ecws[3].e, 10.0, 1e-9);
  EXPECT_NEAR(f.ecws[3].cs, 1.0, 1e-12);
}

TEST(AcwFrame, AngularErrorJustInsideToleranceIsHidden) {
  const Pose tool{{0, 0, 0}, UnitQuat::from_axis_angle(kUnitX, 1.9)};
  const AcwFrame f = acw_frame(tool, Pose{}, default_acw_configs());
  EXPECT_FALSE(f.ecws[3].visible);
  EXPECT_TRUE(f.fully_collimated);
}
