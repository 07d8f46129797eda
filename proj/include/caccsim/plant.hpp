#pragma once

#include <variant>
#include <vector>

#include "caccsim/sim.hpp"

namespace caccsim {

/// Force-balance parameters for the detailed plant. Defaults describe a mid-size sedan.
struct PlantParams {
  double mass = 1650.0;         // [kg]
  double drag_coeff = 0.39;     // lumped 0.5*rho*Cd*A [N/(m/s)^2]
  double rolling_coeff = 0.01;
  double g = 9.81;
  double actuator_lag = 0.2;    // force actuator time constant [s]
  double force_min = -8000.0;   // [N]
  double force_max = 4000.0;    // [N]

  void validate() const;
  bool operator==(const PlantParams&) const = default;
};

/// Closed low-level loop modelled as 1/(tau s + 1) from desired to actual acceleration.
struct IdealLag {
  double tau = 0.4;
  bool operator==(const IdealLag&) const = default;
};

struct GainPoint {
  double speed = 0.0;  // breakpoint [m/s]
  double kp = 0.0;
  double ki = 0.0;
  bool operator==(const GainPoint&) const = default;
};

/// PI acceleration tracking with gains interpolated over speed.
struct GainScheduledPi {
  std::vector<GainPoint> schedule;
  double integrator_limit = 2.0;  // bound on the integral contribution [m/s^2]
  bool operator==(const GainScheduledPi&) const = default;
};

using LowLevelMode = std::variant<IdealLag, GainScheduledPi>;

void validate(const LowLevelMode& mode);

/// Three speed bands with reduced gains at low speed.
GainScheduledPi default_gain_schedule();

/// Exact zero-order-hold update of the first-order lag.
double ideal_lag_update(double a_actual, double a_des, double tau, double dt);

struct ScheduledGains {
  double kp;
  double ki;
};

/// Linear interpolation between breakpoints, clamped at both ends.
ScheduledGains scheduled_gains(const GainScheduledPi& pi, double v);

struct PiState {
  double integral = 0.0;  // ki-weighted error integral [m/s^2]
  bool operator==(const PiState&) const = default;
};

struct PiOutput {
  double force = 0.0;  // [N]
  PiState state;
};

/// One step of the gain-scheduled PI. Integration is suspended while the
/// output saturates in the direction the error pushes.
PiOutput pi_low_level(double a_des, double a_meas, double v, const PiState& state,
                      const GainScheduledPi& pi, const PlantParams& params, double dt);

/// Longitudinal acceleration from traction force minus aerodynamic drag and rolling resistance.
double plant_accel(double v, double force, const PlantParams& params);

/// Per-vehicle low-level loop memory.
struct PowertrainState {
  PiState pi;
  double force = 0.0;  // force after the actuator lag [N]
};

/// Acceleration the low-level loop applies over the next step given the desired value.
double low_level_step(const LowLevelMode& mode, const PlantParams& params, const VehicleState& state,
                      double a_des, double dt, PowertrainState& memory);

}  // namespace caccsim
