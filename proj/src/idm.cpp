#include "caccsim/idm.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "caccsim/errors.hpp"

namespace caccsim {

namespace {
constexpr double kMinSetSpeed = 0.1;  // [m/s]
}

void IdmParams::validate() const {
  if (!(a > 0.0)) throw ConfigError("idm.a must be positive");
  if (!(b > 0.0)) throw ConfigError("idm.b must be positive");
  if (!(s0 > 0.0)) throw ConfigError("idm.s0 must be positive");
  if (!(T >= 0.0)) throw ConfigError("idm.T must be non-negative");
  if (!(delta > 0.0)) throw ConfigError("idm.delta must be positive");
  if (!(b_hard >= b)) throw ConfigError("idm.b_hard must be at least idm.b");
  if (!(v0 >= 0.0)) throw ConfigError("idm.v0 must be non-negative");
}

double idm_desired_gap(double v, double dv, const IdmParams& p) {
  const double dynamic = v * p.T + v * dv / (2.0 * std::sqrt(p.a * p.b));
  return p.s0 + std::max(0.0, dynamic);
}

double idm_acceleration(double v, double gap, double dv, const IdmParams& p) {
  if (!(gap > 0.0)) throw GeometryError("IDM gap must be positive");
  const double v0_eff = std::max(p.v0, kMinSetSpeed);
  double raw = 1.0 - std::pow(v / v0_eff, p.delta);
  if (std::isfinite(gap)) {
    const double ratio = idm_desired_gap(v, dv, p) / gap;
    raw -= ratio * ratio;
  }
  raw *= p.a;
  return std::clamp(raw, -p.b_hard, p.a);
}

double idm_equilibrium_gap(double v, const IdmParams& p) {
  return idm_desired_gap(v, 0.0, p) / std::sqrt(1.0 - std::pow(v / p.v0, p.delta));
}

SetSpeedSchedule::SetSpeedSchedule(std::vector<SetSpeedPoint> points) : points_(std::move(points)) {
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (points_[i].v0 < 0.0) throw ConfigError("set-speed values must be non-negative");
    if (i > 0 && !(points_[i].t > points_[i - 1].t)) throw ConfigError("set-speed times must be strictly increasing");
  }
}

double SetSpeedSchedule::at(double t) const {
  if (points_.empty()) return 0.0;
  auto it = std::upper_bound(points_.begin(), points_.end(), t,
                             [](double x, const SetSpeedPoint& p) { return x < p.t; });
  if (it == points_.begin()) return points_.front().v0;
  return std::prev(it)->v0;
}

ReplayTrace::ReplayTrace(std::vector<ReplaySample> samples) : samples_(std::move(samples)) {
  if (samples_.empty()) throw ConfigError("replay trace is empty");
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    if (samples_[i].v < 0.0) throw ConfigError("replay trace speeds must be non-negative");
    if (i > 0 && !(samples_[i].t > samples_[i - 1].t)) {
      throw ConfigError("replay trace times must be strictly increasing (row " + std::to_string(i + 2) + ")");
    }
  }
}

ReplayTrace ReplayTrace::from_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open replay trace '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("replay trace '" + path + "' is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "t,v,a") throw ConfigError("replay trace '" + path + "' must start with header t,v,a");

  std::vector<ReplaySample> samples;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream fields(line);
    ReplaySample s;
    char c1 = 0, c2 = 0;
    if (!(fields >> s.t >> c1 >> s.v >> c2 >> s.a) || c1 != ',' || c2 != ',') {
      throw ConfigError("replay trace '" + path + "': malformed row " + std::to_string(row));
    }
    samples.push_back(s);
  }
  return ReplayTrace(std::move(samples));
}

ReplaySample replay_driver(const ReplayTrace& trace, double t) {
  const auto& s = trace.samples();
  if (s.empty()) throw ConfigError("replay trace is empty");
  if (t <= s.front().t) return {t, s.front().v, s.front().a};
  if (t >= s.back().t) return {t, s.back().v, s.back().a};
  auto hi = std::upper_bound(s.begin(), s.end(), t, [](double x, const ReplaySample& p) { return x < p.t; });
  auto lo = std::prev(hi);
  const double w = (t - lo->t) / (hi->t - lo->t);
  return {t, lo->v + w * (hi->v - lo->v), lo->a + w * (hi->a - lo->a)};
}

}  // namespace caccsim
