#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "caccsim/road.hpp"

namespace caccsim {

// Sensor frames: x forward, y positive to the right, bearing positive toward +y.
// With this convention the left lane boundary is numerically smaller than the
// right one and the in-lane test is LB < y < RB.

struct RadarDetection {
  int id = 0;
  double r = 0.0;      // range [m]
  double alpha = 0.0;  // bearing [rad]
  double rdot = 0.0;   // range rate [m/s]
};

struct CartesianDetection {
  int id = 0;
  double x = 0.0;
  double y = 0.0;
  double v_rel = 0.0;
};

/// Cubic lane line y(x) = a0 + a1 x + a2 x^2 + a3 x^3 in the camera frame.
struct LaneLinePoly {
  std::array<double, 4> a{};
  bool valid = false;
  double view_range = 80.0;  // [m]

  static LaneLinePoly constant(double offset, double view_range = 80.0) {
    return LaneLinePoly{{offset, 0.0, 0.0, 0.0}, true, view_range};
  }
};

struct MountingGeometry {
  double dx_rc = 2.0;                        // camera-to-radar longitudinal offset [m]
  double fov_half = 0.78539816339744831;     // [rad]
  double max_range = 100.0;                  // [m]

  void validate() const;
  bool operator==(const MountingGeometry&) const = default;
};

struct RadarNoise {
  double sigma_r = 0.0;      // [m]
  double sigma_alpha = 0.0;  // [rad]
  bool operator==(const RadarNoise&) const = default;
};

struct Visibility {
  bool left = true;
  bool right = true;
  bool operator==(const Visibility&) const = default;
};

/// A vehicle placed on the road: front bumper at arc length s, lateral offset d.
struct WorldVehicle {
  int id = 0;
  double s = 0.0;
  double d = 0.0;
  double v = 0.0;
  double length = 4.8;
};

CartesianDetection polar_to_cartesian(const RadarDetection& det);

/// Shift from the radar origin (front bumper) to the camera origin.
CartesianDetection to_camera_frame(const CartesianDetection& det, const MountingGeometry& mount);

/// Throws GeometryError for an invalid polynomial. Beyond view_range the cubic is extrapolated.
double eval_boundary(const LaneLinePoly& poly, double x);

struct LaneBoundaries {
  LaneLinePoly left;
  LaneLinePoly right;
};

/// Fills in missing lane lines. One missing line is rebuilt from the other by
/// shifting its offset by the lane width; with both missing a straight
/// corridor one lane wide is assumed.
LaneBoundaries synthesize_boundaries(const std::optional<LaneLinePoly>& left,
                                     const std::optional<LaneLinePoly>& right, double lane_width);

/// Nearest detection, by camera-frame longitudinal distance, that lies
/// strictly between the lane boundaries.
std::optional<CartesianDetection> select_in_lane_target(std::span<const RadarDetection> detections,
                                                        const std::optional<LaneLinePoly>& left,
                                                        const std::optional<LaneLinePoly>& right,
                                                        const MountingGeometry& mount, double lane_width);

/// Ideal radar measurements of every vehicle's rear-bumper center within range
/// and field of view, then Gaussian noise on range and bearing.
std::vector<RadarDetection> simulate_radar(std::span<const WorldVehicle> others, const WorldVehicle& ego,
                                           const RoadGeometry& road, const MountingGeometry& mount,
                                           const RadarNoise& noise, std::mt19937_64& rng);

struct CameraFrame {
  std::optional<LaneLinePoly> left;
  std::optional<LaneLinePoly> right;
};

/// Least-squares cubic fit to the true lane boundaries sampled every metre
/// over [0, fit_range] in the camera frame.
CameraFrame simulate_camera(const RoadGeometry& road, const WorldVehicle& ego, const MountingGeometry& mount,
                            const Visibility& visibility, double fit_range);

/// Nearest vehicle ahead whose lateral offset from the ego lane centerline is under half a lane.
std::optional<int> ground_truth_in_lane(std::span<const WorldVehicle> others, const WorldVehicle& ego,
                                        const RoadGeometry& road);

struct PerceptionFrame {
  WorldVehicle ego;
  std::vector<WorldVehicle> others;
};

/// Randomized scenes with an in-lane lead, an adjacent-lane vehicle and a
/// vehicle two lanes over, all within camera range.
std::vector<PerceptionFrame> make_three_vehicle_corpus(const RoadGeometry& road, std::size_t frames,
                                                       std::uint64_t seed);

struct FrameOutcome {
  std::vector<RadarDetection> detections;
  std::optional<int> selected;
  std::optional<int> truth;
};

struct CorpusResult {
  std::vector<FrameOutcome> frames;
  double agreement = 0.0;  // fraction of frames where selected == truth
};

struct CorpusOptions {
  MountingGeometry mount;
  RadarNoise noise;
  Visibility visibility;
  double fit_range = 80.0;
  std::uint64_t seed = 1;
};

CorpusResult evaluate_corpus(std::span<const PerceptionFrame> frames, const RoadGeometry& road,
                             const CorpusOptions& options);

}  // namespace caccsim
