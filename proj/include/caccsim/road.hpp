#pragma once

#include <cstddef>
#include <vector>

namespace caccsim {

/// Planar pose. The frame has y to the right of x so that a positive heading
/// change turns right, matching the sensor frames.
struct Pose {
  double x = 0.0;
  double y = 0.0;
  double heading = 0.0;  // [rad]
};

struct RoadSegment {
  double length = 0.0;  // [m]
  double radius = 0.0;  // signed, positive curves right; 0 means straight
  bool operator==(const RoadSegment&) const = default;
};

enum class RoadKind { Straight, Arc, PiecewiseArc };

/// Ego-lane centerline parameterized by arc length s, starting at s = 0 with
/// heading 0. The first segment extends backwards for s < 0 and the last one
/// extends forever.
class RoadGeometry {
 public:
  static RoadGeometry straight(double lane_width = 3.5);
  static RoadGeometry arc(double radius, double lane_width = 3.5);
  static RoadGeometry piecewise(std::vector<RoadSegment> segments, double lane_width = 3.5);

  RoadGeometry() : RoadGeometry(straight()) {}

  /// Pose of the point at arc length s, offset d to the right of the centerline.
  Pose pose(double s, double d = 0.0) const;
  double heading(double s) const;
  /// Signed centerline curvature at s [1/m], positive curving right.
  double curvature(double s) const;

  RoadKind kind() const { return kind_; }
  double lane_width() const { return lane_width_; }
  const std::vector<RoadSegment>& segments() const { return segments_; }

  bool operator==(const RoadGeometry& other) const {
    return kind_ == other.kind_ && lane_width_ == other.lane_width_ && segments_ == other.segments_;
  }

 private:
  RoadGeometry(RoadKind kind, std::vector<RoadSegment> segments, double lane_width);
  std::size_t segment_index(double s) const;

  RoadKind kind_;
  std::vector<RoadSegment> segments_;
  std::vector<double> starts_;  // arc length at the start of each segment
  std::vector<Pose> start_poses_;
  double lane_width_;
};

}  // namespace caccsim
