#pragma once

#include <limits>
#include <string>
#include <vector>

namespace caccsim {

inline constexpr double kFreeRoad = std::numeric_limits<double>::infinity();

struct IdmParams {
  double v0 = 33.33;   // free-traffic desired speed [m/s]
  double s0 = 2.0;     // minimum net distance [m]
  double T = 1.0;      // desired time gap [s]
  double a = 1.5;      // maximum acceleration [m/s^2]
  double b = 2.0;      // comfortable braking, positive [m/s^2]
  double delta = 4.0;
  double b_hard = 4.0; // output clamp on braking, positive [m/s^2]

  void validate() const;
  bool operator==(const IdmParams&) const = default;
};

/// Desired net distance s*. `dv` is own speed minus leader speed (positive when closing).
/// The dynamic term is clamped at zero so a leader pulling away never shrinks s* below s0.
double idm_desired_gap(double v, double dv, const IdmParams& p);

/// IDM acceleration clamped to [-b_hard, a]. Pass kFreeRoad for `gap` on an open road.
/// A set speed of zero is treated as 0.1 m/s for the free-road term.
/// Throws GeometryError when gap <= 0.
double idm_acceleration(double v, double gap, double dv, const IdmParams& p);

/// Closed-form steady-state gap behind a leader at the same speed v < v0.
double idm_equilibrium_gap(double v, const IdmParams& p);

struct SetSpeedPoint {
  double t = 0.0;
  double v0 = 0.0;
  bool operator==(const SetSpeedPoint&) const = default;
};

/// Piecewise-constant set speed. Before the first point the first value applies.
class SetSpeedSchedule {
 public:
  SetSpeedSchedule() = default;
  explicit SetSpeedSchedule(std::vector<SetSpeedPoint> points);

  double at(double t) const;
  const std::vector<SetSpeedPoint>& points() const { return points_; }
  bool empty() const { return points_.empty(); }

  bool operator==(const SetSpeedSchedule&) const = default;

 private:
  std::vector<SetSpeedPoint> points_;
};

struct ReplaySample {
  double t = 0.0;
  double v = 0.0;
  double a = 0.0;
  bool operator==(const ReplaySample&) const = default;
};

/// Recorded lead speed/acceleration profile.
class ReplayTrace {
 public:
  ReplayTrace() = default;
  /// Throws ConfigError when empty or when times are not strictly increasing.
  explicit ReplayTrace(std::vector<ReplaySample> samples);

  /// Reads a CSV with header `t,v,a`.
  static ReplayTrace from_csv(const std::string& path);

  const std::vector<ReplaySample>& samples() const { return samples_; }
  bool empty() const { return samples_.empty(); }
  bool operator==(const ReplayTrace&) const = default;

 private:
  std::vector<ReplaySample> samples_;
};

/// Linear interpolation of both columns, held constant outside the recorded span.
ReplaySample replay_driver(const ReplayTrace& trace, double t);

}  // namespace caccsim
