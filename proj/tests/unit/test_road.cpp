#include <cmath>

#include <gtest/gtest.h>

#include "caccsim/errors.hpp"
#include "caccsim/road.hpp"

namespace caccsim {
namespace {

TEST(RoadGeometry, StraightPose) {
  const auto road = RoadGeometry::straight(3.5);
  const auto p = road.pose(42.0, 1.5);
  EXPECT_DOUBLE_EQ(p.x, 42.0);
  EXPECT_DOUBLE_EQ(p.y, 1.5);
  EXPECT_DOUBLE_EQ(p.heading, 0.0);
  EXPECT_DOUBLE_EQ(road.pose(-10.0).x, -10.0);
}

TEST(RoadGeometry, ArcStaysOnCircle) {
  const double R = 250.0;
  const auto road = RoadGeometry::arc(R);
  // Right-hand curve: the center sits at (0, R) with y to the right.
  for (double s : {0.0, 50.0, 200.0, 700.0}) {
    for (double d : {-3.5, 0.0, 3.5}) {
      const auto p = road.pose(s, d);
      EXPECT_NEAR(std::hypot(p.x, p.y - R), R - d, 1e-9) << s << " " << d;
    }
    EXPECT_NEAR(road.heading(s), s / R, 1e-12);
  }
  EXPECT_DOUBLE_EQ(road.curvature(10.0), 1.0 / R);
}

TEST(RoadGeometry, LeftCurveHasNegativeCurvature) {
  const auto road = RoadGeometry::arc(-300.0);
  EXPECT_LT(road.pose(100.0).y, 0.0);
  EXPECT_LT(road.curvature(0.0), 0.0);
}

TEST(RoadGeometry, PiecewiseIsContinuous) {
  const auto road = RoadGeometry::piecewise({{100.0, 0.0}, {80.0, 200.0}, {1e9, -150.0}}, 3.5);
  for (double s : {100.0, 180.0}) {
    const auto a = road.pose(s - 1e-9);
    const auto b = road.pose(s + 1e-9);
    EXPECT_NEAR(a.x, b.x, 1e-6);
    EXPECT_NEAR(a.y, b.y, 1e-6);
    EXPECT_NEAR(a.heading, b.heading, 1e-6);
  }
  EXPECT_DOUBLE_EQ(road.curvature(50.0), 0.0);
  EXPECT_DOUBLE_EQ(road.curvature(150.0), 1.0 / 200.0);
  EXPECT_DOUBLE_EQ(road.curvature(500.0), -1.0 / 150.0);
}

TEST(RoadGeometry, Validation) {
  EXPECT_THROW(RoadGeometry::arc(49.0), ConfigError);
  EXPECT_THROW(RoadGeometry::arc(0.0), ConfigError);
  EXPECT_THROW(RoadGeometry::straight(2.5), ConfigError);
  EXPECT_THROW(RoadGeometry::piecewise({}, 3.5), ConfigError);
  EXPECT_THROW(RoadGeometry::piecewise({{-5.0, 0.0}, {10.0, 0.0}}, 3.5), ConfigError);
}

}  // namespace
}  // namespace caccsim
