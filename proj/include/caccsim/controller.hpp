#pragma once

#include <optional>

namespace caccsim {

/// Constant-time-headway spacing policy.
struct SpacingPolicy {
  double t_hw = 1.0;  // desired time headway [s]
  double d0 = 3.0;    // standstill distance [m]
  double l = 4.8;     // target vehicle length [m]

  void validate() const;
  bool operator==(const SpacingPolicy&) const = default;
};

struct UpperGains {
  double w_k = 1.0;  // [rad/s]
  double k_p = 1.0;  // [1/s^2]
  double k_d = 1.0;  // [1/s]
};

/// k_d = w_k and k_p = w_k^2. Throws std::invalid_argument unless w_k > 0.
UpperGains gains_from_bandwidth(double w_k);

double desired_spacing(double v_host, const SpacingPolicy& policy);

/// Positive when the clearance is larger than the policy asks for.
double spacing_error(double gap, double v_host, const SpacingPolicy& policy);

/// Analytic derivative of the spacing error: v_rel - t_hw * a_host,
/// with v_rel the target speed minus host speed.
double spacing_error_rate(double v_rel, double a_host, const SpacingPolicy& policy);

double pd_command(double e, double e_dot, const UpperGains& gains);

/// Discrete realization of (tau s + 1) / (t_hw s + 1).
///
/// The state w follows w' = (u - w) / t_hw and is advanced with the exact
/// zero-order-hold update; the output is (tau/t_hw) u + (1 - tau/t_hw) w
/// using the state before the update, so a step input reproduces the
/// continuous response at every sample.
class FeedforwardFilter {
 public:
  FeedforwardFilter(double tau, double t_hw);

  double step(double a_target, double dt);
  void reset() { state_ = 0.0; }

  double state() const { return state_; }
  double tau() const { return tau_; }
  double t_hw() const { return t_hw_; }

 private:
  double tau_;
  double t_hw_;
  double state_ = 0.0;
};

enum class ControllerMode { Acc, Cacc };

struct ControllerConfig {
  ControllerMode mode = ControllerMode::Acc;
  SpacingPolicy policy;
  double w_k = 1.0;     // PD bandwidth [rad/s]
  double tau = 0.4;     // feedforward numerator time constant [s]
  double a_min = -4.0;  // command saturation [m/s^2]
  double a_max = 2.0;
  double cruise_speed = 25.0;    // speed-hold set point when no target is measured [m/s]
  double speed_hold_gain = 0.5;  // [1/s]

  void validate() const;
  bool operator==(const ControllerConfig&) const = default;
};

/// Clearance and relative speed of the selected target as seen by the sensors.
struct Measurement {
  double gap = 0.0;    // [m]
  double v_rel = 0.0;  // target speed minus host speed [m/s]
};

struct ControllerOutput {
  double a_des = 0.0;
  double feedback = 0.0;
  double feedforward = 0.0;
  bool speed_hold = false;
};

/// PD spacing control plus, in CACC mode, the filtered V2V acceleration of the target.
class UpperController {
 public:
  explicit UpperController(const ControllerConfig& config);

  /// `a_target` is the most recent fresh V2V acceleration; absent means the
  /// channel is stale and the filter is driven with zero. Without a measurement
  /// the controller holds `cruise_speed`.
  ControllerOutput update(const std::optional<Measurement>& measurement, double v_host, double a_host,
                          std::optional<double> a_target, double dt);

  const ControllerConfig& config() const { return config_; }
  const UpperGains& gains() const { return gains_; }

 private:
  ControllerConfig config_;
  UpperGains gains_;
  FeedforwardFilter filter_;
};

}  // namespace caccsim
