#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "caccsim/sim.hpp"

namespace caccsim {

/// Samples with start <= t <= end contribute. Startup transients are excluded by default.
struct MetricsWindow {
  double start = 5.0;
  double end = std::numeric_limits<double>::infinity();
};

enum class Norm { Linf, L2 };

/// gap / v_host, absent below 1 m/s.
std::optional<double> time_headway(double gap, double v_host);

/// Throws std::invalid_argument when no sample has a defined headway.
double headway_rmse(std::span<const std::optional<double>> headways, double target);
double headway_rmse(const Trace& trace, std::size_t vehicle, double target, const MetricsWindow& window = {});

double max_abs_spacing_error(const Trace& trace, std::size_t vehicle, const MetricsWindow& window = {});

/// Earliest time after which |e| stays within `band` for the rest of the trace; NaN if it never does.
double settle_time(const Trace& trace, std::size_t vehicle, double band = 0.1);

double signal_norm(std::span<const double> signal, Norm norm);

/// ||downstream|| / ||upstream||; 0 when both vanish, +inf when only upstream vanishes.
double amplification_ratio(std::span<const double> upstream, std::span<const double> downstream, Norm norm);

/// One ratio per consecutive follower pair. Requires at least two followers.
std::vector<double> amplification_ratios(const Trace& trace, Norm norm = Norm::Linf,
                                         const MetricsWindow& window = {});

struct GapSummary {
  bool collided = false;
  double min_gap = 0.0;
};

/// Minimum true clearance over all followers. Throws std::invalid_argument without followers.
GapSummary collision_and_min_gap(const Trace& trace);

struct MetricsReport {
  double headway_rmse = 0.0;
  double max_abs_spacing_error = 0.0;
  double min_gap = 0.0;
  double settle_time = 0.0;
  bool collided = false;
  std::vector<double> amplification_ratios;
};

/// Report for follower `vehicle`. The headway RMSE is NaN when no sample in the window has a defined headway.
/// Amplification ratios are filled when the trace has two or more followers.
MetricsReport compute_report(const Trace& trace, std::size_t vehicle, double target_headway,
                             const MetricsWindow& window = {}, Norm norm = Norm::Linf);

/// Flat `key=value` lines, each key prefixed with `prefix`.
std::string format_report(const MetricsReport& report, const std::string& prefix = "");

}  // namespace caccsim
