#include "caccsim/controller.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "caccsim/errors.hpp"

namespace caccsim {

void SpacingPolicy::validate() const {
  if (!(t_hw > 0.0)) throw ConfigError("t_hw must be positive");
  if (!(d0 > 0.0)) throw ConfigError("d0 must be positive");
  if (!(l > 0.0)) throw ConfigError("l must be positive");
}

UpperGains gains_from_bandwidth(double w_k) {
  if (!(w_k > 0.0) || !std::isfinite(w_k)) throw std::invalid_argument("w_k must be positive");
  return {w_k, w_k * w_k, w_k};
}

double desired_spacing(double v_host, const SpacingPolicy& policy) { return v_host * policy.t_hw + policy.d0; }

double spacing_error(double gap, double v_host, const SpacingPolicy& policy) {
  return gap - desired_spacing(v_host, policy);
}

double spacing_error_rate(double v_rel, double a_host, const SpacingPolicy& policy) {
  return v_rel - policy.t_hw * a_host;
}

double pd_command(double e, double e_dot, const UpperGains& gains) { return gains.k_p * e + gains.k_d * e_dot; }

FeedforwardFilter::FeedforwardFilter(double tau, double t_hw) : tau_(tau), t_hw_(t_hw) {
  if (!(tau > 0.0) || !(t_hw > 0.0)) throw std::invalid_argument("feedforward time constants must be positive");
}

double FeedforwardFilter::step(double a_target, double dt) {
  const double ratio = tau_ / t_hw_;
  const double y = ratio * a_target + (1.0 - ratio) * state_;
  state_ += (1.0 - std::exp(-dt / t_hw_)) * (a_target - state_);
  return y;
}

void ControllerConfig::validate() const {
  policy.validate();
  if (!(w_k > 0.0)) throw ConfigError("w_k must be positive");
  if (!(tau > 0.0)) throw ConfigError("tau must be positive");
  if (!(a_min < 0.0 && a_max > 0.0)) throw ConfigError("command limits must satisfy a_min < 0 < a_max");
  if (!(cruise_speed >= 0.0)) throw ConfigError("cruise_speed must be non-negative");
  if (!(speed_hold_gain > 0.0)) throw ConfigError("speed_hold_gain must be positive");
}

UpperController::UpperController(const ControllerConfig& config)
    : config_(config), gains_(gains_from_bandwidth(config.w_k)), filter_(config.tau, config.policy.t_hw) {}

ControllerOutput UpperController::update(const std::optional<Measurement>& measurement, double v_host,
                                         double a_host, std::optional<double> a_target, double dt) {
  ControllerOutput out;
  if (config_.mode == ControllerMode::Cacc) {
    out.feedforward = filter_.step(a_target.value_or(0.0), dt);
  }

  if (measurement) {
    const double e = spacing_error(measurement->gap, v_host, config_.policy);
    const double e_dot = spacing_error_rate(measurement->v_rel, a_host, config_.policy);
    out.feedback = pd_command(e, e_dot, gains_);
  } else {
    out.speed_hold = true;
    out.feedback = config_.speed_hold_gain * (config_.cruise_speed - v_host);
    out.feedforward = 0.0;
  }

  const double raw = out.feedback + out.feedforward;
  if (!std::isfinite(raw)) throw ControllerFault("upper controller produced a non-finite command");
  out.a_des = std::clamp(raw, config_.a_min, config_.a_max);
  return out;
}

}  // namespace caccsim
