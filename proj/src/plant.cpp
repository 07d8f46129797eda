#include "caccsim/plant.hpp"

#include <algorithm>
#include <cmath>

#include "caccsim/errors.hpp"

namespace caccsim {

void PlantParams::validate() const {
  if (!(mass > 0.0)) throw ConfigError("plant.mass must be positive");
  if (!(drag_coeff >= 0.0)) throw ConfigError("plant.drag_coeff must be non-negative");
  if (!(rolling_coeff >= 0.0 && rolling_coeff < 1.0)) throw ConfigError("plant.rolling_coeff must lie in [0, 1)");
  if (!(g > 0.0)) throw ConfigError("plant.g must be positive");
  if (!(actuator_lag > 0.0)) throw ConfigError("plant.actuator_lag must be positive");
  if (!(force_min < 0.0 && force_max > 0.0)) throw ConfigError("plant force range must straddle zero");
}

void validate(const LowLevelMode& mode) {
  if (const auto* lag = std::get_if<IdealLag>(&mode)) {
    if (!(lag->tau > 0.0)) throw ConfigError("low_level.tau must be positive");
    return;
  }
  const auto& pi = std::get<GainScheduledPi>(mode);
  if (pi.schedule.empty()) throw ConfigError("low_level.schedule must not be empty");
  for (std::size_t i = 0; i < pi.schedule.size(); ++i) {
    const auto& p = pi.schedule[i];
    if (p.kp < 0.0 || p.ki < 0.0) throw ConfigError("low_level.schedule gains must be non-negative");
    if (i > 0 && !(p.speed > pi.schedule[i - 1].speed)) {
      throw ConfigError("low_level.schedule breakpoints must be strictly increasing");
    }
  }
  if (!(pi.integrator_limit >= 0.0)) throw ConfigError("low_level.integrator_limit must be non-negative");
}

GainScheduledPi default_gain_schedule() {
  return GainScheduledPi{{{0.0, 0.6, 1.5}, {5.0, 0.8, 2.0}, {15.0, 1.0, 2.5}}, 2.0};
}

double ideal_lag_update(double a_actual, double a_des, double tau, double dt) {
  return a_actual + (1.0 - std::exp(-dt / tau)) * (a_des - a_actual);
}

ScheduledGains scheduled_gains(const GainScheduledPi& pi, double v) {
  const auto& s = pi.schedule;
  if (v <= s.front().speed) return {s.front().kp, s.front().ki};
  if (v >= s.back().speed) return {s.back().kp, s.back().ki};
  auto hi = std::upper_bound(s.begin(), s.end(), v, [](double x, const GainPoint& p) { return x < p.speed; });
  auto lo = std::prev(hi);
  const double w = (v - lo->speed) / (hi->speed - lo->speed);
  return {lo->kp + w * (hi->kp - lo->kp), lo->ki + w * (hi->ki - lo->ki)};
}

PiOutput pi_low_level(double a_des, double a_meas, double v, const PiState& state, const GainScheduledPi& pi,
                      const PlantParams& params, double dt) {
  const auto [kp, ki] = scheduled_gains(pi, v);
  const double err = a_des - a_meas;

  const double u_trial = params.mass * (kp * err + state.integral);
  const bool saturated_high = u_trial > params.force_max && err > 0.0;
  const bool saturated_low = u_trial < params.force_min && err < 0.0;

  PiState next = state;
  if (!saturated_high && !saturated_low) {
    next.integral = std::clamp(state.integral + ki * err * dt, -pi.integrator_limit, pi.integrator_limit);
  }
  const double u = params.mass * (kp * err + next.integral);
  return {std::clamp(u, params.force_min, params.force_max), next};
}

double plant_accel(double v, double force, const PlantParams& params) {
  const double drag = params.drag_coeff * v * v;
  const double rolling = v > 0.0 ? params.rolling_coeff * params.mass * params.g : 0.0;
  return (force - drag - rolling) / params.mass;
}

double low_level_step(const LowLevelMode& mode, const PlantParams& params, const VehicleState& state,
                      double a_des, double dt, PowertrainState& memory) {
  if (const auto* lag = std::get_if<IdealLag>(&mode)) {
    return ideal_lag_update(state.a, a_des, lag->tau, dt);
  }
  const auto& pi = std::get<GainScheduledPi>(mode);
  const auto out = pi_low_level(a_des, state.a, state.v, memory.pi, pi, params, dt);
  memory.pi = out.state;
  memory.force += (1.0 - std::exp(-dt / params.actuator_lag)) * (out.force - memory.force);
  return plant_accel(state.v, memory.force, params);
}

}  // namespace caccsim
