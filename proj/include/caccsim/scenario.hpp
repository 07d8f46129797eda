#pragma once

#include <optional>
#include <string>
#include <vector>

#include "caccsim/controller.hpp"
#include "caccsim/idm.hpp"
#include "caccsim/perception.hpp"
#include "caccsim/plant.hpp"
#include "caccsim/road.hpp"
#include "caccsim/sim.hpp"
#include "caccsim/v2v.hpp"

namespace caccsim {

enum class LeadDriverKind { Idm, Replay, Pulse };

/// Constant speed with one +accel block followed by an equal -accel block.
struct PulseProfile {
  double start = 5.0;  // [s]
  double width = 2.0;  // duration of each half [s]
  double accel = 1.0;  // [m/s^2]

  double accel_at(double t) const;
  bool operator==(const PulseProfile&) const = default;
};

struct LeadConfig {
  LeadDriverKind driver = LeadDriverKind::Idm;
  double v_init = 0.0;
  double length = 4.8;
  IdmParams idm;
  SetSpeedSchedule schedule;
  std::string trace_path;  // as written in the scenario file
  ReplayTrace trace;       // loaded when driver is replay
  PulseProfile pulse;
  bool operator==(const LeadConfig&) const = default;
};

enum class MeasurementKind { Truth, Perception };

struct FollowerConfig {
  ControllerConfig controller;
  double length = 4.8;
  LowLevelMode low_level = IdealLag{};
  PlantParams plant;
  MeasurementKind measurement = MeasurementKind::Truth;
  bool operator==(const FollowerConfig&) const = default;
};

struct VisibilityChange {
  double t = 0.0;
  Visibility visibility;
  bool operator==(const VisibilityChange&) const = default;
};

/// Extra vehicle in another lane, moving at constant speed. `s` is relative to the lead's start.
struct TrafficVehicle {
  double lane_offset = 3.5;
  double s = 0.0;
  double v = 0.0;
  bool operator==(const TrafficVehicle&) const = default;
};

struct PerceptionConfig {
  RoadGeometry road;
  MountingGeometry mounting;
  RadarNoise noise;
  double radar_period = 0.05;
  double camera_period = 0.1;
  double fit_range = 80.0;
  std::vector<VisibilityChange> visibility;
  std::vector<TrafficVehicle> traffic;
  std::size_t corpus_frames = 2000;

  Visibility visibility_at(double t) const;
  bool operator==(const PerceptionConfig&) const = default;
};

struct OutputConfig {
  std::string dir = "out";
  bool plots = true;
  bool operator==(const OutputConfig&) const = default;
};

struct ScenarioConfig {
  SimConfig sim;
  LeadConfig lead;
  std::vector<FollowerConfig> followers;
  std::optional<ChannelParams> channel;
  PerceptionConfig perception;
  OutputConfig output;

  /// Throws ConfigError on any violated invariant.
  void validate() const;
  bool operator==(const ScenarioConfig&) const = default;
};

/// Documented defaults with one ACC follower and an IDM lead.
ScenarioConfig default_scenario();

/// Parses a YAML scenario. Omitted optional fields take their defaults;
/// unknown keys, type mismatches and violated constraints raise ConfigError
/// naming the key and line. Relative replay paths resolve against `base_dir`.
ScenarioConfig parse_scenario_text(const std::string& text, const std::string& base_dir = ".");
ScenarioConfig parse_scenario(const std::string& path);

/// Writes every field, so parse_scenario_text(emit_scenario(c)) == c.
std::string emit_scenario(const ScenarioConfig& config);
std::string emit_default_config();

}  // namespace caccsim
