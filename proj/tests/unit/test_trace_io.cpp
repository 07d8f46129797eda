#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "caccsim/engine.hpp"
#include "caccsim/plots.hpp"
#include "caccsim/trace_io.hpp"
#include "oracles.hpp"

namespace caccsim {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("caccsim_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

Trace small_run(double duration = 30.0) {
  auto sc = default_scenario();
  sc.sim.duration = duration;
  sc.lead.v_init = 0.0;
  return run_scenario(sc);
}

TEST(TraceCsv, GoldenHeader) {
  const auto cols = trace_csv_header(2);
  std::string joined;
  for (const auto& c : cols) joined += (joined.empty() ? "" : ",") + c;
  EXPECT_EQ(joined,
            "t_s,"
            "veh0_x_m,veh0_v_mps,veh0_a_mps2,veh0_ades_mps2,veh0_gap_m,veh0_h_s,veh0_e_m,veh0_measgap_m,"
            "veh0_ff_mps2,veh0_target,veh0_bsmage_s,veh0_hold,"
            "veh1_x_m,veh1_v_mps,veh1_a_mps2,veh1_ades_mps2,veh1_gap_m,veh1_h_s,veh1_e_m,veh1_measgap_m,"
            "veh1_ff_mps2,veh1_target,veh1_bsmage_s,veh1_hold,"
            "collision_vehicle");
}

TEST(TraceCsv, LineCountAndFormat) {
  const auto text = format_trace_csv(small_run());
  std::size_t lines = 0;
  for (char c : text) lines += c == '\n';
  EXPECT_EQ(lines, 3002u);
  EXPECT_EQ(text.find('\r'), std::string::npos);
  EXPECT_EQ(text.find("nan"), std::string::npos);
  // The follower starts from rest, so the first row has an empty headway field.
  std::istringstream in(text);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  std::vector<std::string> fields;
  std::stringstream rs(row);
  for (std::string f; std::getline(rs, f, ',');) fields.push_back(f);
  if (row.back() == ',') fields.emplace_back();
  ASSERT_EQ(fields.size(), 1u + 2u * 12u + 1u);
  EXPECT_EQ(fields[0], "0.000000");
  EXPECT_EQ(fields[1 + 12 + 5], "");
}

TEST(TraceCsv, RoundTripAtEmittedPrecision) {
  const auto trace = small_run();
  const auto text = format_trace_csv(trace);
  const auto back = parse_trace_csv(text);
  EXPECT_EQ(back, quantize_trace(trace));
  EXPECT_EQ(format_trace_csv(back), text);
}

TEST(TraceCsv, CollisionColumnRoundTrips) {
  auto sc = default_scenario();
  sc.lead.driver = LeadDriverKind::Pulse;
  sc.lead.v_init = 20.0;
  sc.lead.pulse = {1.0, 10.0, -6.0};
  sc.followers.front().controller.a_min = -0.5;
  const auto trace = run_scenario(sc);
  ASSERT_TRUE(trace.collided);
  const auto back = parse_trace_csv(format_trace_csv(trace));
  EXPECT_TRUE(back.collided);
  EXPECT_EQ(back.collision_vehicle, trace.collision_vehicle);
}

TEST(TraceCsv, RejectsForeignHeader) {
  EXPECT_THROW(parse_trace_csv("t,x\n0,1\n"), std::exception);
}

TEST(TraceCsv, FileRoundTrip) {
  const auto dir = scratch("csv");
  const auto trace = small_run(3.0);
  write_trace_csv(trace, (dir / "t.csv").string());
  EXPECT_EQ(read_trace_csv((dir / "t.csv").string()), quantize_trace(trace));
  EXPECT_THROW(write_trace_csv(trace, (dir / "missing" / "t.csv").string()), std::exception);
}

TEST(Plots, ManifestAndDeterminism) {
  const auto a = scratch("plots_a");
  const auto b = scratch("plots_b");
  const auto trace = small_run(10.0);
  const auto again = small_run(10.0);
  emit_plots({{"ACC", &trace}, {"CACC", &again}}, a.string());
  emit_plots({{"ACC", &trace}, {"CACC", &again}}, b.string());
  for (const char* name : {"speed.svg", "headway.svg", "gap.svg"}) {
    ASSERT_TRUE(fs::exists(a / name)) << name;
    const auto content = slurp(a / name);
    EXPECT_EQ(content, slurp(b / name)) << name;
    EXPECT_EQ(content.rfind("<svg", 0), 0u);
    EXPECT_NE(content.find("time [s]"), std::string::npos);
  }
  EXPECT_NE(slurp(a / "speed.svg").find("speed [m/s]"), std::string::npos);
}

TEST(Plots, EmptyTraceIsAnError) {
  const Trace empty;
  EXPECT_THROW(emit_plots({{"", &empty}}, scratch("plots_empty").string()), std::invalid_argument);
  EXPECT_THROW(emit_plots({}, scratch("plots_none").string()), std::invalid_argument);
}

}  // namespace
}  // namespace caccsim
