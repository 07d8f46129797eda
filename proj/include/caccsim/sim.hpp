#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace caccsim {

struct SimConfig {
  double dt = 0.01;        // controller and integration step [s]
  double duration = 60.0;  // [s]
  std::uint64_t seed = 1;

  void validate() const;
  /// Number of integration steps; the trace holds step_count() + 1 records.
  std::size_t step_count() const;
  bool operator==(const SimConfig&) const = default;
};

/// Longitudinal state of one vehicle. `x` is the front-bumper position along the road arc length.
struct VehicleState {
  double x = 0.0;  // [m]
  double v = 0.0;  // [m/s]
  double a = 0.0;  // [m/s^2], acceleration applied over the last step
  bool operator==(const VehicleState&) const = default;
};

/// Semi-implicit Euler step with a no-reverse clamp on speed.
/// The returned `a` is the acceleration actually applied, which differs from
/// `accel` when the vehicle comes to rest inside the step.
/// Throws ControllerFault on a non-finite command.
VehicleState integrate_step(const VehicleState& state, double accel, double dt);

/// One vehicle's signals at one instant. Vehicle 0 is the lead and carries no
/// gap/headway/error values.
struct VehicleSample {
  double x = 0.0;
  double v = 0.0;
  double a = 0.0;
  double a_des = 0.0;
  std::optional<double> gap;       // true clearance to the predecessor [m]
  std::optional<double> headway;   // gap / v [s], absent near standstill
  std::optional<double> spacing_error;  // [m]
  std::optional<double> meas_gap;  // held sensor clearance used by the controller [m]
  double feedforward = 0.0;        // [m/s^2]
  std::optional<int> target_id;
  std::optional<double> bsm_age;   // [s]
  bool speed_hold = false;
  bool operator==(const VehicleSample&) const = default;
};

struct TraceRecord {
  double t = 0.0;
  std::vector<VehicleSample> vehicles;
  bool operator==(const TraceRecord&) const = default;
};

struct Trace {
  std::vector<TraceRecord> records;
  bool collided = false;
  std::optional<std::size_t> collision_vehicle;

  std::size_t vehicle_count() const { return records.empty() ? 0 : records.front().vehicles.size(); }
  std::size_t follower_count() const { return vehicle_count() > 0 ? vehicle_count() - 1 : 0; }
  bool operator==(const Trace&) const = default;
};

}  // namespace caccsim
