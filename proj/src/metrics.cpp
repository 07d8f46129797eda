#include "caccsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace caccsim {

namespace {

constexpr double kMinHeadwaySpeed = 1.0;  // [m/s]

bool in_window(double t, const MetricsWindow& w) { return t >= w.start - 1e-9 && t <= w.end + 1e-9; }

void require_follower(const Trace& trace, std::size_t vehicle) {
  if (trace.follower_count() == 0) throw std::invalid_argument("trace has no followers");
  if (vehicle == 0 || vehicle >= trace.vehicle_count()) {
    throw std::invalid_argument("vehicle index must name a follower");
  }
}

std::vector<double> spacing_errors(const Trace& trace, std::size_t vehicle, const MetricsWindow& window) {
  std::vector<double> out;
  for (const auto& rec : trace.records) {
    if (!in_window(rec.t, window)) continue;
    out.push_back(rec.vehicles[vehicle].spacing_error.value_or(0.0));
  }
  return out;
}

}  // namespace

std::optional<double> time_headway(double gap, double v_host) {
  if (v_host < kMinHeadwaySpeed) return std::nullopt;
  return gap / v_host;
}

double headway_rmse(std::span<const std::optional<double>> headways, double target) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& h : headways) {
    if (!h) continue;
    const double d = *h - target;
    sum += d * d;
    ++n;
  }
  if (n == 0) throw std::invalid_argument("no samples with a defined headway");
  return std::sqrt(sum / static_cast<double>(n));
}

double headway_rmse(const Trace& trace, std::size_t vehicle, double target, const MetricsWindow& window) {
  require_follower(trace, vehicle);
  std::vector<std::optional<double>> h;
  h.reserve(trace.records.size());
  for (const auto& rec : trace.records) {
    if (in_window(rec.t, window)) h.push_back(rec.vehicles[vehicle].headway);
  }
  return headway_rmse(h, target);
}

double max_abs_spacing_error(const Trace& trace, std::size_t vehicle, const MetricsWindow& window) {
  require_follower(trace, vehicle);
  double worst = 0.0;
  for (double e : spacing_errors(trace, vehicle, window)) worst = std::max(worst, std::abs(e));
  return worst;
}

double settle_time(const Trace& trace, std::size_t vehicle, double band) {
  require_follower(trace, vehicle);
  double settled = std::nan("");
  for (auto it = trace.records.rbegin(); it != trace.records.rend(); ++it) {
    const auto& e = it->vehicles[vehicle].spacing_error;
    if (e && std::abs(*e) > band) break;
    settled = it->t;
  }
  return settled;
}

double signal_norm(std::span<const double> signal, Norm norm) {
  double acc = 0.0;
  for (double x : signal) {
    if (norm == Norm::Linf) {
      acc = std::max(acc, std::abs(x));
    } else {
      acc += x * x;
    }
  }
  return norm == Norm::Linf ? acc : std::sqrt(acc);
}

double amplification_ratio(std::span<const double> upstream, std::span<const double> downstream, Norm norm) {
  const double up = signal_norm(upstream, norm);
  const double down = signal_norm(downstream, norm);
  if (up == 0.0) return down == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return down / up;
}

std::vector<double> amplification_ratios(const Trace& trace, Norm norm, const MetricsWindow& window) {
  if (trace.follower_count() < 2) throw std::invalid_argument("amplification ratios need at least two followers");
  std::vector<double> ratios;
  for (std::size_t i = 1; i + 1 < trace.vehicle_count(); ++i) {
    const auto up = spacing_errors(trace, i, window);
    const auto down = spacing_errors(trace, i + 1, window);
    ratios.push_back(amplification_ratio(up, down, norm));
  }
  return ratios;
}

GapSummary collision_and_min_gap(const Trace& trace) {
  if (trace.follower_count() == 0) throw std::invalid_argument("trace has no followers");
  GapSummary out{trace.collided, std::numeric_limits<double>::infinity()};
  for (const auto& rec : trace.records) {
    for (std::size_t i = 1; i < rec.vehicles.size(); ++i) {
      if (rec.vehicles[i].gap) out.min_gap = std::min(out.min_gap, *rec.vehicles[i].gap);
    }
  }
  return out;
}

MetricsReport compute_report(const Trace& trace, std::size_t vehicle, double target_headway,
                             const MetricsWindow& window, Norm norm) {
  MetricsReport r;
  require_follower(trace, vehicle);
  try {
    r.headway_rmse = headway_rmse(trace, vehicle, target_headway, window);
  } catch (const std::invalid_argument&) {
    r.headway_rmse = std::nan("");
  }
  r.max_abs_spacing_error = max_abs_spacing_error(trace, vehicle, window);
  const auto gaps = collision_and_min_gap(trace);
  r.min_gap = gaps.min_gap;
  r.collided = gaps.collided;
  r.settle_time = settle_time(trace, vehicle);
  if (trace.follower_count() >= 2) r.amplification_ratios = amplification_ratios(trace, norm, window);
  return r;
}

std::string format_report(const MetricsReport& report, const std::string& prefix) {
  std::string out;
  out += fmt::format("{}headway_rmse_s={:.6f}\n", prefix, report.headway_rmse);
  out += fmt::format("{}max_abs_spacing_error_m={:.6f}\n", prefix, report.max_abs_spacing_error);
  out += fmt::format("{}min_gap_m={:.6f}\n", prefix, report.min_gap);
  out += fmt::format("{}settle_time_s={:.6f}\n", prefix, report.settle_time);
  out += fmt::format("{}collided={}\n", prefix, report.collided ? 1 : 0);
  for (std::size_t i = 0; i < report.amplification_ratios.size(); ++i) {
    out += fmt::format("{}amplification_ratio_{}={:.6f}\n", prefix, i + 1, report.amplification_ratios[i]);
  }
  return out;
}

}  // namespace caccsim
