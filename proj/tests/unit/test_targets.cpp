#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "collimator/errors.hpp"
#include "collimator/targets.hpp"

using namespace collimator;

TEST(TrainingTargets, CountIdsAndRadius) {
  const auto t = training_targets(42);
  ASSERT_EQ(t.size(), 32u);
  for (std::size_t i = 0; i < t.size(); ++i) {
    EXPECT_EQ(t[i].id, static_cast<int>(i) + 1);
    EXPECT_EQ(t[i].group, TargetGroup::Training);
    EXPECT_LE(t[i].pose.position.norm(), 300.0);
  }
}

TEST(TrainingTargets, Deterministic) {
  const auto a = training_targets(5);
  const auto b = training_targets(5);
  const auto c = training_targets(6);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].pose.position, b[i].pose.position);
    EXPECT_EQ(a[i].pose.orientation, b[i].pose.orientation);
  }
  EXPECT_NE(a[0].pose.position, c[0].pose.position);
}

TEST(TrainingTargets, UniformInBallMeanRadius) {
  // For a uniform ball of radius R, E[r] = 3R/4.
  const auto t = training_targets(1, 100000, 300.0, {10, 20, 30});
  double sum = 0.0;
  for (const Target& x : t) sum += (x.pose.position - Vec3{10, 20, 30}).norm();
  EXPECT_NEAR(sum / static_cast<double>(t.size()), 225.0, 1.0);
}

TEST(TrainingTargets, RejectsBadArguments) {
  EXPECT_THROW(training_targets(1, 0), ConfigError);
  EXPECT_THROW(training_targets(1, 4, -1.0), ConfigError);
}

TEST(ArchTargets, SixteenFdiIds) {
  const auto md = arch_targets(TargetGroup::Mandible);
  const auto mx = arch_targets(TargetGroup::Maxilla);
  ASSERT_EQ(md.size(), 16u);
  ASSERT_EQ(mx.size(), 16u);
  std::set<int> md_ids, mx_ids;
  for (const auto& t : md) md_ids.insert(t.id);
  for (const auto& t : mx) mx_ids.insert(t.id);
  std::set<int> want_md, want_mx;
  for (int i = 1; i <= 8; ++i) {
    want_md.insert({30 + i, 40 + i});
    want_mx.insert({10 + i, 20 + i});
  }
  EXPECT_EQ(md_ids, want_md);
  EXPECT_EQ(mx_ids, want_mx);
  EXPECT_THROW(arch_targets(TargetGroup::Training), ConfigError);
}

TEST(ArchTargets, MirrorSymmetricAboutMidline) {
  const ArchParams p;
  for (TargetGroup g : {TargetGroup::Mandible, TargetGroup::Maxilla}) {
    const auto t = arch_targets(g, p);
    for (std::size_t i = 0; i < 8; ++i) {
      const Vec3 r = t[i].pose.position;
      const Vec3 l = t[i + 8].pose.position;
      EXPECT_NEAR(r.x - p.center.x, -(l.x - p.center.x), 1e-9);
      EXPECT_NEAR(r.y, l.y, 1e-12);
      EXPECT_NEAR(r.z, l.z, 1e-9);
      EXPECT_LT(r.x, p.center.x);  // patient right is -X
      const Vec3 ar = t[i].pose.orientation.rotate(kToolAxis);
      const Vec3 al = t[i + 8].pose.orientation.rotate(kToolAxis);
      EXPECT_NEAR(ar.x, -al.x, 1e-9);
      EXPECT_NEAR(ar.y, al.y, 1e-9);
      EXPECT_NEAR(ar.z, al.z, 1e-9);
    }
  }
}

TEST(ArchTargets, OnParabolaWithEqualSpacing) {
  const ArchParams p;
  const double c = p.depth_mm / std::pow(p.width_mm / 2, 2);
  const auto t = arch_targets(TargetGroup::Mandible, p);
  for (std::size_t i = 0; i < 8; ++i) {
    const Vec3 q = t[i + 8].pose.position;
    const double x = q.x - p.center.x;
    EXPECT_NEAR(q.z, p.center.z + c * x * x, 1e-9);
    EXPECT_NEAR(q.y, p.center.y, 1e-12);
  }
  // Numerical arc length between neighbours on one side.
  auto arc = [&](double x0, double x1) {
    double s = 0.0;
    const int n = 20000;
    for (int k = 0; k < n; ++k) {
      const double xm = x0 + (x1 - x0) * (k + 0.5) / n;
      s += std::sqrt(1 + 4 * c * c * xm * xm) * (x1 - x0) / n;
    }
    return s;
  };
  EXPECT_NEAR(arc(0.0, t[8].pose.position.x - p.center.x), p.spacing_mm / 2, 1e-6);
  for (std::size_t i = 9; i < 16; ++i) {
    EXPECT_NEAR(arc(t[i - 1].pose.position.x, t[i].pose.position.x), p.spacing_mm, 1e-6);
  }
}

TEST(ArchTargets, AxisDirectionsAndTilt) {
  const ArchParams p;
  const auto md = arch_targets(TargetGroup::Mandible, p);
  const auto mx = arch_targets(TargetGroup::Maxilla, p);
  for (std::size_t i = 0; i < 16; ++i) {
    const Vec3 a = md[i].pose.orientation.rotate(kToolAxis);
    const Vec3 b = mx[i].pose.orientation.rotate(kToolAxis);
    EXPECT_GT(a.y, 0.9);
    EXPECT_LT(b.y, -0.9);
    const int tooth = md[i].id % 10;
    const double tilt = 15.0 + (5.0 - 15.0) * (tooth - 1) / 7.0;
    EXPECT_NEAR(angle_between_deg(a, kUnitY), tilt, 1e-9);
    EXPECT_NEAR(angle_between_deg(b, -kUnitY), tilt, 1e-9);
    // Leans outward: away from the arch centre in the horizontal plane.
    const Vec3 rel = md[i].pose.position - p.center;
    EXPECT_GT(a.x * (2 * rel.x * p.depth_mm / std::pow(p.width_mm / 2, 2)) - a.z, 0.0);
  }
  EXPECT_NEAR(mx[0].pose.position.y - md[0].pose.position.y, p.occlusal_gap_mm, 1e-12);
}

TEST(ArchParams, Validate) {
  ArchParams p;
  p.width_mm = 0;
  EXPECT_THROW(p.validate(), ConfigError);
  p = {};
  p.molar_tilt_deg = 95;
  EXPECT_THROW(arch_targets(TargetGroup::Maxilla, p), ConfigError);
}

TEST(TargetGroupNames, RoundTrip) {
  for (TargetGroup g : {TargetGroup::Training, TargetGroup::Mandible, TargetGroup::Maxilla}) {
    EXPECT_EQ(target_group_from_string(to_string(g)), g);
  }
  EXPECT_THROW(target_group_from_string("palate"), ConfigError);
}
