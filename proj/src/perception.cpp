#include "caccsim/perception.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Dense>

#include "caccsim/errors.hpp"

namespace caccsim {

namespace {

struct BodyFrame {
  double x = 0.0;
  double y = 0.0;
  double cos_h = 1.0;
  double sin_h = 0.0;

  double longitudinal(double px, double py) const { return (px - x) * cos_h + (py - y) * sin_h; }
  double lateral(double px, double py) const { return -(px - x) * sin_h + (py - y) * cos_h; }
};

// Radar frame at the ego front-bumper center, heading tangent to the lane.
BodyFrame radar_frame(const RoadGeometry& road, const WorldVehicle& ego) {
  const Pose p = road.pose(ego.s, ego.d);
  return {p.x, p.y, std::cos(p.heading), std::sin(p.heading)};
}

bool usable(const std::optional<LaneLinePoly>& poly) { return poly.has_value() && poly->valid; }

// Lateral position of the boundary at offset `d` where it crosses camera-frame longitudinal distance `xc`.
double boundary_lateral(const RoadGeometry& road, const BodyFrame& cam, double s_guess, double d, double xc) {
  double s = s_guess;
  for (int iter = 0; iter < 50; ++iter) {
    const Pose p = road.pose(s, d);
    const double f = cam.longitudinal(p.x, p.y) - xc;
    if (std::abs(f) < 1e-12) break;
    const double scale = 1.0 - road.curvature(s) * d;
    const double df = scale * (std::cos(p.heading) * cam.cos_h + std::sin(p.heading) * cam.sin_h);
    s -= f / df;
  }
  const Pose p = road.pose(s, d);
  return cam.lateral(p.x, p.y);
}

LaneLinePoly fit_cubic(const std::vector<double>& xs, const std::vector<double>& ys, double fit_range) {
  // Fit in x / fit_range to keep the normal matrix well conditioned.
  const auto n = static_cast<Eigen::Index>(xs.size());
  Eigen::MatrixXd A(n, 4);
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double u = xs[static_cast<std::size_t>(i)] / fit_range;
    A(i, 0) = 1.0;
    A(i, 1) = u;
    A(i, 2) = u * u;
    A(i, 3) = u * u * u;
    b(i) = ys[static_cast<std::size_t>(i)];
  }
  const Eigen::Vector4d c = A.colPivHouseholderQr().solve(b);
  LaneLinePoly poly;
  poly.valid = true;
  poly.view_range = fit_range;
  double scale = 1.0;
  for (int k = 0; k < 4; ++k) {
    poly.a[static_cast<std::size_t>(k)] = c(k) / scale;
    scale *= fit_range;
  }
  return poly;
}

}  // namespace

void MountingGeometry::validate() const {
  if (!(dx_rc >= 0.0)) throw ConfigError("mounting.dx_rc must be non-negative");
  if (!(fov_half > 0.0 && fov_half < std::numbers::pi / 2)) throw ConfigError("mounting.fov_half must lie in (0, 90) degrees");
  if (!(max_range > 0.0)) throw ConfigError("mounting.max_range must be positive");
}

CartesianDetection polar_to_cartesian(const RadarDetection& det) {
  return {det.id, det.r * std::cos(det.alpha), det.r * std::sin(det.alpha), det.rdot};
}

CartesianDetection to_camera_frame(const CartesianDetection& det, const MountingGeometry& mount) {
  return {det.id, det.x + mount.dx_rc, det.y, det.v_rel};
}

double eval_boundary(const LaneLinePoly& poly, double x) {
  if (!poly.valid) throw GeometryError("lane line is not valid; synthesize boundaries first");
  return poly.a[0] + x * (poly.a[1] + x * (poly.a[2] + x * poly.a[3]));
}

LaneBoundaries synthesize_boundaries(const std::optional<LaneLinePoly>& left,
                                     const std::optional<LaneLinePoly>& right, double lane_width) {
  const bool has_left = usable(left);
  const bool has_right = usable(right);
  if (has_left && has_right) return {*left, *right};
  if (has_left) {
    LaneLinePoly rebuilt = *left;
    rebuilt.a[0] += lane_width;
    return {*left, rebuilt};
  }
  if (has_right) {
    LaneLinePoly rebuilt = *right;
    rebuilt.a[0] -= lane_width;
    return {rebuilt, *right};
  }
  const double inf = std::numeric_limits<double>::infinity();
  return {LaneLinePoly::constant(-lane_width / 2.0, inf), LaneLinePoly::constant(lane_width / 2.0, inf)};
}

std::optional<CartesianDetection> select_in_lane_target(std::span<const RadarDetection> detections,
                                                        const std::optional<LaneLinePoly>& left,
                                                        const std::optional<LaneLinePoly>& right,
                                                        const MountingGeometry& mount, double lane_width) {
  std::vector<CartesianDetection> candidates;
  candidates.reserve(detections.size());
  for (const auto& det : detections) {
    const auto c = polar_to_cartesian(det);
    if (c.x <= 0.0) continue;
    candidates.push_back(to_camera_frame(c, mount));
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const CartesianDetection& a, const CartesianDetection& b) { return a.x < b.x; });

  const auto bounds = synthesize_boundaries(left, right, lane_width);
  for (const auto& c : candidates) {
    const double lb = eval_boundary(bounds.left, c.x);
    const double rb = eval_boundary(bounds.right, c.x);
    if (lb < c.y && c.y < rb) return c;
  }
  return std::nullopt;
}

std::vector<RadarDetection> simulate_radar(std::span<const WorldVehicle> others, const WorldVehicle& ego,
                                           const RoadGeometry& road, const MountingGeometry& mount,
                                           const RadarNoise& noise, std::mt19937_64& rng) {
  const BodyFrame frame = radar_frame(road, ego);
  std::vector<RadarDetection> out;
  for (const auto& other : others) {
    if (other.id == ego.id) continue;
    const Pose rear = road.pose(other.s - other.length, other.d);
    const double x = frame.longitudinal(rear.x, rear.y);
    const double y = frame.lateral(rear.x, rear.y);
    if (x <= 0.0) continue;
    const double r = std::hypot(x, y);
    const double alpha = std::atan2(y, x);
    if (r > mount.max_range || std::abs(alpha) > mount.fov_half) continue;

    const double dvx = other.v * std::cos(rear.heading) - ego.v * frame.cos_h;
    const double dvy = other.v * std::sin(rear.heading) - ego.v * frame.sin_h;
    const double dx = rear.x - frame.x;
    const double dy = rear.y - frame.y;
    RadarDetection det{other.id, r, alpha, (dx * dvx + dy * dvy) / r};

    if (noise.sigma_r > 0.0) det.r += std::normal_distribution<double>(0.0, noise.sigma_r)(rng);
    if (noise.sigma_alpha > 0.0) det.alpha += std::normal_distribution<double>(0.0, noise.sigma_alpha)(rng);
    if (det.r <= 0.0 || std::abs(det.alpha) > mount.fov_half) continue;
    out.push_back(det);
  }
  return out;
}

CameraFrame simulate_camera(const RoadGeometry& road, const WorldVehicle& ego, const MountingGeometry& mount,
                            const Visibility& visibility, double fit_range) {
  if (!(fit_range > 0.0)) throw std::invalid_argument("fit_range must be positive");
  BodyFrame cam = radar_frame(road, ego);
  cam.x -= mount.dx_rc * cam.cos_h;
  cam.y -= mount.dx_rc * cam.sin_h;

  std::vector<double> xs;
  for (double x = 0.0; x <= fit_range + 1e-9; x += 1.0) xs.push_back(x);

  auto fit = [&](double offset) {
    std::vector<double> ys;
    ys.reserve(xs.size());
    for (double xc : xs) ys.push_back(boundary_lateral(road, cam, ego.s - mount.dx_rc + xc, offset, xc));
    return fit_cubic(xs, ys, fit_range);
  };

  const double half = road.lane_width() / 2.0;
  CameraFrame frame;
  if (visibility.left) frame.left = fit(ego.d - half);
  if (visibility.right) frame.right = fit(ego.d + half);
  return frame;
}

std::optional<int> ground_truth_in_lane(std::span<const WorldVehicle> others, const WorldVehicle& ego,
                                        const RoadGeometry& road) {
  std::optional<int> best;
  double best_s = std::numeric_limits<double>::infinity();
  for (const auto& other : others) {
    if (other.id == ego.id) continue;
    const double rear = other.s - other.length;
    if (rear <= ego.s) continue;
    if (!(std::abs(other.d - ego.d) < road.lane_width() / 2.0)) continue;
    if (rear < best_s) {
      best_s = rear;
      best = other.id;
    }
  }
  return best;
}

std::vector<PerceptionFrame> make_three_vehicle_corpus(const RoadGeometry& road, std::size_t frames,
                                                       std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto uniform = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
  auto side = [&] { return uniform(0.0, 1.0) < 0.5 ? -1.0 : 1.0; };
  const double w = road.lane_width();

  std::vector<PerceptionFrame> corpus;
  corpus.reserve(frames);
  for (std::size_t i = 0; i < frames; ++i) {
    PerceptionFrame f;
    f.ego = {0, uniform(0.0, 200.0), 0.0, uniform(5.0, 25.0), 4.8};
    auto place = [&](int id, double offset) {
      const double clearance = id == 1 ? uniform(8.0, 65.0) : uniform(3.0, 65.0);
      const double length = 4.8;
      return WorldVehicle{id, f.ego.s + clearance + length, offset, f.ego.v + uniform(-3.0, 3.0), length};
    };
    f.others.push_back(place(1, uniform(-0.5, 0.5)));
    f.others.push_back(place(2, side() * w + uniform(-0.4, 0.4)));
    f.others.push_back(place(3, side() * 2.0 * w + uniform(-0.4, 0.4)));
    corpus.push_back(std::move(f));
  }
  return corpus;
}

CorpusResult evaluate_corpus(std::span<const PerceptionFrame> frames, const RoadGeometry& road,
                             const CorpusOptions& options) {
  CorpusResult result;
  result.frames.reserve(frames.size());
  std::size_t agree = 0;
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const auto& f = frames[i];
    std::seed_seq sseq{static_cast<std::uint32_t>(options.seed), static_cast<std::uint32_t>(options.seed >> 32),
                       static_cast<std::uint32_t>(i), 0x9e3779b9u};
    std::mt19937_64 rng(sseq);

    FrameOutcome outcome;
    outcome.detections = simulate_radar(f.others, f.ego, road, options.mount, options.noise, rng);
    const auto camera = simulate_camera(road, f.ego, options.mount, options.visibility, options.fit_range);
    const auto target =
        select_in_lane_target(outcome.detections, camera.left, camera.right, options.mount, road.lane_width());
    if (target) outcome.selected = target->id;
    outcome.truth = ground_truth_in_lane(f.others, f.ego, road);
    if (outcome.selected == outcome.truth) ++agree;
    result.frames.push_back(std::move(outcome));
  }
  result.agreement = frames.empty() ? 1.0 : static_cast<double>(agree) / static_cast<double>(frames.size());
  return result;
}

}  // namespace caccsim
