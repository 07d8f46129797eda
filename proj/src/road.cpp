#include "caccsim/road.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "caccsim/errors.hpp"

namespace caccsim {

namespace {

constexpr double kMinRadius = 50.0;
constexpr double kMinLaneWidth = 2.5;

double segment_curvature(const RoadSegment& seg) { return seg.radius == 0.0 ? 0.0 : 1.0 / seg.radius; }

// Pose reached after travelling u along a segment of curvature k from `from`.
Pose advance(const Pose& from, double k, double u) {
  if (k == 0.0) {
    return {from.x + u * std::cos(from.heading), from.y + u * std::sin(from.heading), from.heading};
  }
  const double heading = from.heading + k * u;
  return {from.x + (std::sin(heading) - std::sin(from.heading)) / k,
          from.y - (std::cos(heading) - std::cos(from.heading)) / k, heading};
}

}  // namespace

RoadGeometry::RoadGeometry(RoadKind kind, std::vector<RoadSegment> segments, double lane_width)
    : kind_(kind), segments_(std::move(segments)), lane_width_(lane_width) {
  if (!(lane_width_ > kMinLaneWidth)) throw ConfigError("lane_width must exceed 2.5 m");
  if (segments_.empty()) throw ConfigError("road needs at least one segment");
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    const auto& seg = segments_[i];
    if (seg.radius != 0.0 && std::abs(seg.radius) < kMinRadius) {
      throw ConfigError("road radius magnitude must be at least 50 m");
    }
    const bool last = i + 1 == segments_.size();
    if (!last && !(seg.length > 0.0 && std::isfinite(seg.length))) {
      throw ConfigError("road segment lengths must be positive");
    }
  }
  Pose pose;
  double s = 0.0;
  for (const auto& seg : segments_) {
    starts_.push_back(s);
    start_poses_.push_back(pose);
    if (std::isfinite(seg.length)) {
      pose = advance(pose, segment_curvature(seg), seg.length);
      s += seg.length;
    }
  }
}

RoadGeometry RoadGeometry::straight(double lane_width) {
  return RoadGeometry(RoadKind::Straight, {{std::numeric_limits<double>::infinity(), 0.0}}, lane_width);
}

RoadGeometry RoadGeometry::arc(double radius, double lane_width) {
  if (radius == 0.0) throw ConfigError("arc radius must be non-zero");
  return RoadGeometry(RoadKind::Arc, {{std::numeric_limits<double>::infinity(), radius}}, lane_width);
}

RoadGeometry RoadGeometry::piecewise(std::vector<RoadSegment> segments, double lane_width) {
  return RoadGeometry(RoadKind::PiecewiseArc, std::move(segments), lane_width);
}

std::size_t RoadGeometry::segment_index(double s) const {
  auto it = std::upper_bound(starts_.begin(), starts_.end(), s);
  return it == starts_.begin() ? 0 : static_cast<std::size_t>(std::distance(starts_.begin(), it) - 1);
}

Pose RoadGeometry::pose(double s, double d) const {
  const std::size_t idx = segment_index(s);
  Pose p = advance(start_poses_[idx], segment_curvature(segments_[idx]), s - starts_[idx]);
  p.x -= d * std::sin(p.heading);
  p.y += d * std::cos(p.heading);
  return p;
}

double RoadGeometry::heading(double s) const { return pose(s).heading; }

double RoadGeometry::curvature(double s) const { return segment_curvature(segments_[segment_index(s)]); }

}  // namespace caccsim
