#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "caccsim/engine.hpp"
#include "caccsim/metrics.hpp"
#include "caccsim/trace_io.hpp"
#include "oracles.hpp"

namespace caccsim {
namespace {

TEST(TimeHeadway, Examples) {
  EXPECT_DOUBLE_EQ(*time_headway(13.0, 10.0), 1.3);
  EXPECT_DOUBLE_EQ(*time_headway(6.0, 6.0), 1.0);
  EXPECT_FALSE(time_headway(3.0, 0.5).has_value());
}

TEST(HeadwayRmse, Examples) {
  const std::vector<std::optional<double>> constant(10, 1.2);
  EXPECT_NEAR(headway_rmse(constant, 1.0), 0.2, 1e-12);
  const std::vector<std::optional<double>> exact(10, 1.0);
  EXPECT_DOUBLE_EQ(headway_rmse(exact, 1.0), 0.0);
  const std::vector<std::optional<double>> alt{0.9, 1.1, 0.9, 1.1, std::nullopt};
  EXPECT_NEAR(headway_rmse(alt, 1.0), 0.1, 1e-12);
  const std::vector<std::optional<double>> none(3);
  EXPECT_THROW(headway_rmse(none, 1.0), std::invalid_argument);
}

TEST(AmplificationRatio, Examples) {
  const std::vector<double> e{0.0, 1.0, -2.0, 0.5};
  std::vector<double> doubled, zero(e.size(), 0.0);
  for (double x : e) doubled.push_back(2.0 * x);
  EXPECT_DOUBLE_EQ(amplification_ratio(e, e, Norm::Linf), 1.0);
  EXPECT_DOUBLE_EQ(amplification_ratio(e, zero, Norm::Linf), 0.0);
  EXPECT_DOUBLE_EQ(amplification_ratio(e, doubled, Norm::Linf), 2.0);
  EXPECT_DOUBLE_EQ(amplification_ratio(e, doubled, Norm::L2), 2.0);
  EXPECT_DOUBLE_EQ(amplification_ratio(zero, zero, Norm::L2), 0.0);
  EXPECT_EQ(amplification_ratio(zero, e, Norm::L2), std::numeric_limits<double>::infinity());
}

TEST(AmplificationRatio, ShiftInvariantAndHomogeneous) {
  std::vector<double> up(200), down(200);
  for (int i = 0; i < 200; ++i) {
    up[i] = std::sin(0.1 * i) * std::exp(-0.01 * i);
    down[i] = 0.7 * std::sin(0.1 * i - 0.4);
  }
  const double base = amplification_ratio(up, down, Norm::L2);
  std::vector<double> up_shift(up), down_shift(down);
  up_shift.insert(up_shift.begin(), 25, 0.0);
  down_shift.insert(down_shift.begin(), 25, 0.0);
  EXPECT_NEAR(amplification_ratio(up_shift, down_shift, Norm::L2), base, 1e-12);
  for (double& x : down) x *= 3.0;
  EXPECT_NEAR(amplification_ratio(up, down, Norm::L2), 3.0 * base, 1e-12);
}

Trace synthetic(std::size_t followers, double gap) {
  Trace t;
  for (int k = 0; k < 100; ++k) {
    TraceRecord r{0.1 * k, std::vector<VehicleSample>(followers + 1)};
    for (std::size_t i = 1; i <= followers; ++i) {
      r.vehicles[i].v = 10.0;
      r.vehicles[i].gap = gap;
      r.vehicles[i].headway = gap / 10.0;
      r.vehicles[i].spacing_error = 0.1 * static_cast<double>(i) * std::sin(0.3 * k);
    }
    t.records.push_back(r);
  }
  return t;
}

TEST(CollisionAndMinGap, Examples) {
  const auto g = collision_and_min_gap(synthetic(1, 13.0));
  EXPECT_FALSE(g.collided);
  EXPECT_DOUBLE_EQ(g.min_gap, 13.0);
  auto crashed = synthetic(1, 13.0);
  crashed.records.back().vehicles[1].gap = -0.01;
  crashed.collided = true;
  const auto c = collision_and_min_gap(crashed);
  EXPECT_TRUE(c.collided);
  EXPECT_LE(c.min_gap, 0.0);
  EXPECT_THROW(collision_and_min_gap(synthetic(0, 1.0)), std::invalid_argument);
}

TEST(AmplificationRatios, PerConsecutivePair) {
  const auto r = amplification_ratios(synthetic(3, 13.0), Norm::Linf, MetricsWindow{0.0});
  ASSERT_EQ(r.size(), 2u);
  EXPECT_NEAR(r[0], 2.0, 1e-9);
  EXPECT_NEAR(r[1], 1.5, 1e-9);
  EXPECT_THROW(amplification_ratios(synthetic(1, 13.0)), std::invalid_argument);
}

TEST(Metrics, WindowExcludesStartup) {
  auto t = synthetic(1, 13.0);
  for (auto& r : t.records) r.vehicles[1].headway = r.t < 5.0 ? 3.0 : 1.3;
  EXPECT_NEAR(headway_rmse(t, 1, 1.3), 0.0, 1e-12);
  EXPECT_GT(headway_rmse(t, 1, 1.3, MetricsWindow{0.0}), 1.0);
}

TEST(Metrics, RecomputedFromCsvMatchesQuantizedTrace) {
  const auto trace = run_scenario(oracle::load_scenario("scenarios/paper_urban_0p6s.cfg"));
  const auto reread = parse_trace_csv(format_trace_csv(trace));
  const auto quantized = quantize_trace(trace);
  EXPECT_EQ(format_report(compute_report(reread, 1, 0.6)), format_report(compute_report(quantized, 1, 0.6)));
  EXPECT_NEAR(headway_rmse(reread, 1, 0.6), headway_rmse(quantized, 1, 0.6), 1e-9);
  EXPECT_NEAR(max_abs_spacing_error(reread, 1), max_abs_spacing_error(quantized, 1), 1e-9);
  EXPECT_NEAR(collision_and_min_gap(reread).min_gap, collision_and_min_gap(quantized).min_gap, 1e-9);
  EXPECT_NEAR(headway_rmse(reread, 1, 0.6), headway_rmse(trace, 1, 0.6), 1e-5);
}

TEST(SettleTime, LastExcursion) {
  auto t = synthetic(1, 13.0);
  for (auto& r : t.records) r.vehicles[1].spacing_error = r.t < 4.0 ? 1.0 : 0.01;
  EXPECT_NEAR(settle_time(t, 1), 4.0, 1e-9);
  for (auto& r : t.records) r.vehicles[1].spacing_error = 1.0;
  EXPECT_TRUE(std::isnan(settle_time(t, 1)));
}

TEST(FormatReport, Keys) {
  MetricsReport r;
  r.headway_rmse = 0.25;
  r.amplification_ratios = {0.9, 1.1};
  const auto text = format_report(r, "acc.");
  EXPECT_NE(text.find("acc.headway_rmse_s=0.250000\n"), std::string::npos);
  EXPECT_NE(text.find("acc.amplification_ratio_2=1.100000\n"), std::string::npos);
  EXPECT_NE(text.find("acc.collided=0\n"), std::string::npos);
}

}  // namespace
}  // namespace caccsim
