#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "caccsim/errors.hpp"
#include "caccsim/idm.hpp"
#include "caccsim/sim.hpp"
#include "oracles.hpp"

namespace caccsim {
namespace {

TEST(IdmDesiredGap, Examples) {
  const IdmParams p;
  EXPECT_DOUBLE_EQ(idm_desired_gap(10.0, 0.0, p), 12.0);
  EXPECT_NEAR(idm_desired_gap(10.0, 2.0, p), 2.0 + 10.0 + 20.0 / (2.0 * std::sqrt(3.0)), 1e-12);
  EXPECT_NEAR(idm_desired_gap(10.0, 2.0, p), 17.7735, 1e-4);
  EXPECT_DOUBLE_EQ(idm_desired_gap(10.0, -20.0, p), 2.0);
}

TEST(IdmAcceleration, Examples) {
  IdmParams p;
  p.v0 = 20.0;
  EXPECT_NEAR(idm_acceleration(20.0, kFreeRoad, 0.0, p), 0.0, 1e-12);
  EXPECT_NEAR(idm_acceleration(0.0, p.s0, 0.0, p), 0.0, 1e-12);
  EXPECT_DOUBLE_EQ(idm_acceleration(0.0, kFreeRoad, 0.0, p), p.a);
}

TEST(IdmAcceleration, InvalidGeometry) {
  EXPECT_THROW(idm_acceleration(5.0, 0.0, 0.0, IdmParams{}), GeometryError);
  EXPECT_THROW(idm_acceleration(5.0, -1.0, 0.0, IdmParams{}), GeometryError);
}

TEST(IdmAcceleration, MatchesReferenceInsideClampRange) {
  const IdmParams p;
  for (double v : {0.0, 3.0, 12.0, 30.0}) {
    for (double gap : {8.0, 25.0, 60.0}) {
      for (double dv : {-3.0, 0.0, 2.0}) {
        const double ref = oracle::idm_raw(v, gap, dv, p.v0, p.s0, p.T, p.a, p.b, p.delta);
        EXPECT_NEAR(idm_acceleration(v, gap, dv, p), std::clamp(ref, -p.b_hard, p.a), 1e-12);
      }
    }
  }
}

TEST(IdmAcceleration, OutputStaysInBounds) {
  IdmParams p;
  p.v0 = 0.0;
  for (double v : {0.0, 0.05, 1.0, 10.0, 30.0}) {
    for (double gap : {0.1, 1.0, 10.0, kFreeRoad}) {
      const double a = idm_acceleration(v, gap, 5.0, p);
      EXPECT_GE(a, -p.b_hard);
      EXPECT_LE(a, p.a);
    }
  }
}

TEST(IdmAcceleration, Monotonicity) {
  const IdmParams p;
  for (double gap : {5.0, 15.0, 50.0}) {
    double prev = std::numeric_limits<double>::infinity();
    for (double v = 0.0; v <= 35.0; v += 0.5) {
      const double a = idm_acceleration(v, gap, 0.0, p);
      ASSERT_LE(a, prev + 1e-12);
      prev = a;
    }
  }
  for (double v : {0.0, 5.0, 20.0}) {
    double prev = -std::numeric_limits<double>::infinity();
    for (double gap = 1.0; gap <= 120.0; gap += 0.5) {
      const double a = idm_acceleration(v, gap, 0.0, p);
      ASSERT_GE(a, prev - 1e-12);
      prev = a;
    }
  }
}

TEST(IdmEquilibrium, ClosedFormIsAFixedPoint) {
  const IdmParams p;
  for (double v = 0.5; v < p.v0; v += 1.5) {
    EXPECT_NEAR(idm_acceleration(v, idm_equilibrium_gap(v, p), 0.0, p), 0.0, 1e-9) << v;
  }
}

TEST(IdmEquilibrium, AgreesWithBisectionRoot) {
  const IdmParams p;
  for (double v : {2.0, 5.556, 10.0, 20.0}) {
    const double root = oracle::bisect(
        [&](double s) { return oracle::idm_raw(v, s, 0.0, p.v0, p.s0, p.T, p.a, p.b, p.delta); }, 0.5, 500.0);
    EXPECT_NEAR(idm_equilibrium_gap(v, p), root, 1e-9);
  }
  EXPECT_NEAR(idm_equilibrium_gap(5.556, p), 7.559, 1e-3);
}

TEST(IdmEquilibrium, SimulatedFollowerConverges) {
  const IdmParams p;
  const double v_lead = 10.0;
  VehicleState lead{60.0, v_lead, 0.0};
  VehicleState ego{0.0, 6.0, 0.0};
  for (int k = 0; k < 12000; ++k) {
    const double gap = lead.x - ego.x - 4.8;
    const double a = idm_acceleration(ego.v, gap, ego.v - lead.v, p);
    lead = integrate_step(lead, 0.0, 0.01);
    ego = integrate_step(ego, a, 0.01);
  }
  const double gap = lead.x - ego.x - 4.8;
  const double s_eq = idm_equilibrium_gap(v_lead, p);
  EXPECT_LT(std::abs(gap - s_eq) / s_eq, 0.005);
  EXPECT_LT(std::abs(ego.v - v_lead), 0.01);
}

TEST(IdmParams, Validation) {
  IdmParams p;
  EXPECT_NO_THROW(p.validate());
  p.b_hard = 1.0;
  EXPECT_THROW(p.validate(), ConfigError);
  p = IdmParams{};
  p.s0 = 0.0;
  EXPECT_THROW(p.validate(), ConfigError);
  p = IdmParams{};
  p.delta = 0.0;
  EXPECT_THROW(p.validate(), ConfigError);
}

TEST(SetSpeedSchedule, PiecewiseConstant) {
  const SetSpeedSchedule s({{0.0, 5.556}, {20.0, 6.944}, {40.0, 0.0}});
  EXPECT_DOUBLE_EQ(s.at(-1.0), 5.556);
  EXPECT_DOUBLE_EQ(s.at(19.99), 5.556);
  EXPECT_DOUBLE_EQ(s.at(20.0), 6.944);
  EXPECT_DOUBLE_EQ(s.at(100.0), 0.0);
  EXPECT_THROW(SetSpeedSchedule({{0.0, 1.0}, {0.0, 2.0}}), ConfigError);
  EXPECT_THROW(SetSpeedSchedule({{0.0, -1.0}}), ConfigError);
}

TEST(ReplayDriver, InterpolationAndClamping) {
  const ReplayTrace trace({{1.0, 10.0, 0.5}, {2.0, 12.0, 1.5}});
  const auto at_sample = replay_driver(trace, 1.0);
  EXPECT_DOUBLE_EQ(at_sample.v, 10.0);
  EXPECT_DOUBLE_EQ(at_sample.a, 0.5);
  const auto mid = replay_driver(trace, 1.5);
  EXPECT_DOUBLE_EQ(mid.v, 11.0);
  EXPECT_DOUBLE_EQ(mid.a, 1.0);
  EXPECT_DOUBLE_EQ(replay_driver(trace, 0.0).v, 10.0);
  EXPECT_DOUBLE_EQ(replay_driver(trace, 9.0).v, 12.0);
}

TEST(ReplayTrace, RejectsBadInput) {
  EXPECT_THROW(ReplayTrace(std::vector<ReplaySample>{}), ConfigError);
  EXPECT_THROW(ReplayTrace({{1.0, 1.0, 0.0}, {1.0, 2.0, 0.0}}), ConfigError);
}

TEST(ReplayTrace, ReadsCsv) {
  const auto path = std::filesystem::temp_directory_path() / "caccsim_replay_test.csv";
  {
    std::ofstream f(path);
    f << "t,v,a\n0,1.5,0\n0.1,1.6,1\n";
  }
  const auto trace = ReplayTrace::from_csv(path.string());
  ASSERT_EQ(trace.samples().size(), 2u);
  EXPECT_DOUBLE_EQ(trace.samples()[1].v, 1.6);
  {
    std::ofstream f(path);
    f << "time,v,a\n0,1,0\n";
  }
  EXPECT_THROW(ReplayTrace::from_csv(path.string()), ConfigError);
  std::filesystem::remove(path);
  EXPECT_THROW(ReplayTrace::from_csv(path.string()), ConfigError);
}

TEST(ReplayTrace, BundledUrbanFixtureIsValid) {
  const auto trace = ReplayTrace::from_csv(oracle::source_path("scenarios/data/urban_replay.csv"));
  EXPECT_GT(trace.samples().size(), 1000u);
  double a_max = 0.0, a_min = 0.0;
  for (const auto& s : trace.samples()) {
    a_max = std::max(a_max, s.a);
    a_min = std::min(a_min, s.a);
  }
  EXPECT_GT(a_max, 2.0);
  EXPECT_LT(a_min, -2.5);
}

}  // namespace
}  // namespace caccsim
