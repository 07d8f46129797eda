#include "caccsim/scenario.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "caccsim/errors.hpp"

namespace caccsim {

namespace {

std::size_t edit_distance(const std::string& a, const std::string& b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

std::string line_of(const YAML::Node& node) {
  const auto mark = node.Mark();
  return mark.line >= 0 ? "line " + std::to_string(mark.line + 1) + ": " : "";
}

// A mapping node with a fixed set of permitted keys.
class Section {
 public:
  Section(const YAML::Node& node, std::string path, std::initializer_list<const char*> allowed)
      : node_(node), path_(std::move(path)) {
    if (node_ && !node_.IsNull() && !node_.IsMap()) {
      throw ConfigError(line_of(node_) + "'" + path_ + "' must be a mapping");
    }
    if (!node_ || node_.IsNull()) return;
    for (const auto& kv : node_) {
      const auto key = kv.first.as<std::string>();
      if (std::find_if(allowed.begin(), allowed.end(), [&](const char* k) { return key == k; }) != allowed.end()) {
        continue;
      }
      std::string best;
      std::size_t best_dist = std::numeric_limits<std::size_t>::max();
      for (const char* k : allowed) {
        const auto d = edit_distance(key, k);
        if (d < best_dist) {
          best_dist = d;
          best = k;
        }
      }
      std::string msg = line_of(kv.first) + "unknown key '" + key + "' in '" + path_ + "'";
      if (best_dist <= 2) msg += "; did you mean '" + best + "'?";
      throw ConfigError(msg);
    }
  }

  bool has(const char* key) const { return node_ && node_.IsMap() && node_[key]; }
  YAML::Node child(const char* key) const { return has(key) ? node_[key] : YAML::Node(); }
  std::string path(const char* key) const { return path_ + "." + key; }

  template <typename T>
  T get(const char* key, T fallback) const {
    if (!has(key)) return fallback;
    return convert<T>(node_[key], path(key));
  }

  template <typename T>
  T require(const char* key) const {
    if (!has(key)) throw ConfigError(line_of(node_) + "missing required field '" + path(key) + "'");
    return convert<T>(node_[key], path(key));
  }

  template <typename T>
  static T convert(const YAML::Node& value, const std::string& where) {
    try {
      if (!value.IsScalar()) throw YAML::BadConversion(value.Mark());
      return value.as<T>();
    } catch (const YAML::BadConversion&) {
      throw ConfigError(line_of(value) + "'" + where + "' expects " + type_name<T>());
    }
  }

 private:
  template <typename T>
  static const char* type_name() {
    if constexpr (std::is_same_v<T, bool>) return "true or false";
    else if constexpr (std::is_same_v<T, std::string>) return "a string";
    else if constexpr (std::is_integral_v<T>) return "a non-negative integer";
    else return "a number";
  }

  YAML::Node node_;
  std::string path_;
};

YAML::Node require_sequence(const YAML::Node& node, const std::string& where) {
  if (!node.IsSequence()) throw ConfigError(line_of(node) + "'" + where + "' must be a list");
  return node;
}

std::vector<double> number_row(const YAML::Node& node, std::size_t width, const std::string& where) {
  if (!node.IsSequence() || node.size() != width) {
    throw ConfigError(line_of(node) + "'" + where + "' entries must be lists of " + std::to_string(width) + " values");
  }
  std::vector<double> row;
  for (const auto& v : node) row.push_back(Section::convert<double>(v, where));
  return row;
}

template <typename Enum>
Enum parse_enum(const Section& s, const char* key, Enum fallback,
                std::initializer_list<std::pair<const char*, Enum>> choices) {
  if (!s.has(key)) return fallback;
  const auto value = s.get<std::string>(key, "");
  for (const auto& [name, e] : choices) {
    if (value == name) return e;
  }
  std::string options;
  for (const auto& [name, e] : choices) options += options.empty() ? name : std::string("|") + name;
  throw ConfigError(line_of(s.child(key)) + "'" + s.path(key) + "' must be one of " + options + ", got '" + value +
                    "'");
}

IdmParams parse_idm(const YAML::Node& node, const std::string& path) {
  Section s(node, path, {"v0", "s0", "T", "a", "b", "delta", "b_hard"});
  IdmParams p;
  p.v0 = s.get("v0", p.v0);
  p.s0 = s.get("s0", p.s0);
  p.T = s.get("T", p.T);
  p.a = s.get("a", p.a);
  p.b = s.get("b", p.b);
  p.delta = s.get("delta", p.delta);
  p.b_hard = s.get("b_hard", p.b_hard);
  return p;
}

LeadConfig parse_lead(const YAML::Node& node, const std::string& base_dir) {
  Section s(node, "lead", {"driver", "v_init", "length", "idm", "schedule", "trace", "pulse"});
  LeadConfig lead;
  lead.driver = parse_enum(s, "driver", LeadDriverKind::Idm,
                           {{"idm", LeadDriverKind::Idm}, {"replay", LeadDriverKind::Replay},
                            {"pulse", LeadDriverKind::Pulse}});
  lead.v_init = s.get("v_init", lead.v_init);
  lead.length = s.get("length", lead.length);
  if (s.has("idm")) lead.idm = parse_idm(s.child("idm"), "lead.idm");
  if (s.has("schedule")) {
    std::vector<SetSpeedPoint> points;
    for (const auto& row : require_sequence(s.child("schedule"), "lead.schedule")) {
      const auto v = number_row(row, 2, "lead.schedule");
      points.push_back({v[0], v[1]});
    }
    try {
      lead.schedule = SetSpeedSchedule(std::move(points));
    } catch (const ConfigError& e) {
      throw ConfigError(line_of(s.child("schedule")) + "lead.schedule: " + e.what());
    }
  }
  if (s.has("pulse")) {
    Section p(s.child("pulse"), "lead.pulse", {"start", "width", "accel"});
    lead.pulse.start = p.get("start", lead.pulse.start);
    lead.pulse.width = p.get("width", lead.pulse.width);
    lead.pulse.accel = p.get("accel", lead.pulse.accel);
  }
  if (lead.driver == LeadDriverKind::Replay) {
    lead.trace_path = s.require<std::string>("trace");
    std::filesystem::path resolved(lead.trace_path);
    if (resolved.is_relative()) resolved = std::filesystem::path(base_dir) / resolved;
    try {
      lead.trace = ReplayTrace::from_csv(resolved.string());
    } catch (const ConfigError& e) {
      throw ConfigError(line_of(s.child("trace")) + e.what());
    }
  } else {
    lead.trace_path = s.get<std::string>("trace", "");
  }
  return lead;
}

LowLevelMode parse_low_level(const YAML::Node& node, const std::string& path) {
  Section s(node, path, {"kind", "tau", "schedule", "integrator_limit"});
  enum class Kind { Lag, Pi };
  const Kind kind = parse_enum(s, "kind", Kind::Lag, {{"ideal_lag", Kind::Lag}, {"gain_scheduled_pi", Kind::Pi}});
  if (kind == Kind::Lag) {
    if (s.has("schedule") || s.has("integrator_limit")) {
      throw ConfigError(line_of(node) + "'" + path + "': schedule/integrator_limit apply only to gain_scheduled_pi");
    }
    return IdealLag{s.get("tau", IdealLag{}.tau)};
  }
  if (s.has("tau")) throw ConfigError(line_of(node) + "'" + path + "': tau applies only to ideal_lag");
  GainScheduledPi pi = default_gain_schedule();
  pi.integrator_limit = s.get("integrator_limit", pi.integrator_limit);
  if (s.has("schedule")) {
    pi.schedule.clear();
    for (const auto& row : require_sequence(s.child("schedule"), path + ".schedule")) {
      const auto v = number_row(row, 3, path + ".schedule");
      pi.schedule.push_back({v[0], v[1], v[2]});
    }
  }
  return pi;
}

PlantParams parse_plant(const YAML::Node& node, const std::string& path) {
  Section s(node, path,
            {"mass", "drag_coeff", "rolling_coeff", "g", "actuator_lag", "force_min", "force_max"});
  PlantParams p;
  p.mass = s.get("mass", p.mass);
  p.drag_coeff = s.get("drag_coeff", p.drag_coeff);
  p.rolling_coeff = s.get("rolling_coeff", p.rolling_coeff);
  p.g = s.get("g", p.g);
  p.actuator_lag = s.get("actuator_lag", p.actuator_lag);
  p.force_min = s.get("force_min", p.force_min);
  p.force_max = s.get("force_max", p.force_max);
  return p;
}

FollowerConfig parse_follower(const YAML::Node& node, const std::string& path) {
  Section s(node, path,
            {"mode", "t_hw", "d0", "l", "length", "w_k", "tau", "a_min", "a_max", "cruise_speed", "speed_hold_gain",
             "measurement", "low_level", "plant"});
  FollowerConfig f;
  auto& c = f.controller;
  c.mode = parse_enum(s, "mode", c.mode, {{"acc", ControllerMode::Acc}, {"cacc", ControllerMode::Cacc}});
  c.policy.t_hw = s.get("t_hw", c.policy.t_hw);
  c.policy.d0 = s.get("d0", c.policy.d0);
  c.policy.l = s.get("l", c.policy.l);
  c.w_k = s.get("w_k", c.w_k);
  c.tau = s.get("tau", c.tau);
  c.a_min = s.get("a_min", c.a_min);
  c.a_max = s.get("a_max", c.a_max);
  c.cruise_speed = s.get("cruise_speed", c.cruise_speed);
  c.speed_hold_gain = s.get("speed_hold_gain", c.speed_hold_gain);
  f.length = s.get("length", f.length);
  f.measurement = parse_enum(s, "measurement", f.measurement,
                             {{"truth", MeasurementKind::Truth}, {"perception", MeasurementKind::Perception}});
  if (s.has("low_level")) f.low_level = parse_low_level(s.child("low_level"), path + ".low_level");
  if (s.has("plant")) f.plant = parse_plant(s.child("plant"), path + ".plant");
  return f;
}

ChannelParams parse_channel(const YAML::Node& node) {
  Section s(node, "channel", {"period", "latency", "jitter", "loss_prob", "stale_timeout"});
  ChannelParams p;
  p.period = s.get("period", p.period);
  p.latency = s.get("latency", p.latency);
  p.jitter = s.get("jitter", p.jitter);
  p.loss_prob = s.get("loss_prob", p.loss_prob);
  p.stale_timeout = s.get("stale_timeout", p.stale_timeout);
  return p;
}

RoadGeometry parse_road(const YAML::Node& node) {
  Section s(node, "perception.road", {"kind", "radius", "segments", "lane_width"});
  const double width = s.get("lane_width", 3.5);
  const auto kind = parse_enum(s, "kind", RoadKind::Straight,
                               {{"straight", RoadKind::Straight}, {"arc", RoadKind::Arc},
                                {"piecewise", RoadKind::PiecewiseArc}});
  try {
    switch (kind) {
      case RoadKind::Straight:
        return RoadGeometry::straight(width);
      case RoadKind::Arc:
        return RoadGeometry::arc(s.require<double>("radius"), width);
      case RoadKind::PiecewiseArc: {
        std::vector<RoadSegment> segments;
        for (const auto& row : require_sequence(s.child("segments"), "perception.road.segments")) {
          const auto v = number_row(row, 2, "perception.road.segments");
          segments.push_back({v[0], v[1]});
        }
        return RoadGeometry::piecewise(std::move(segments), width);
      }
    }
  } catch (const ConfigError& e) {
    const std::string what = e.what();
    if (what.rfind("line ", 0) == 0) throw;
    throw ConfigError(line_of(node) + "perception.road: " + what);
  }
  return RoadGeometry::straight(width);
}

PerceptionConfig parse_perception(const YAML::Node& node) {
  Section s(node, "perception",
            {"road", "mounting", "noise", "radar_period", "camera_period", "fit_range", "visibility", "traffic",
             "corpus_frames"});
  PerceptionConfig p;
  if (s.has("road")) p.road = parse_road(s.child("road"));
  if (s.has("mounting")) {
    Section m(s.child("mounting"), "perception.mounting", {"dx_rc", "fov_half", "max_range"});
    p.mounting.dx_rc = m.get("dx_rc", p.mounting.dx_rc);
    p.mounting.fov_half = m.get("fov_half", p.mounting.fov_half);
    p.mounting.max_range = m.get("max_range", p.mounting.max_range);
  }
  if (s.has("noise")) {
    Section n(s.child("noise"), "perception.noise", {"sigma_r", "sigma_alpha"});
    p.noise.sigma_r = n.get("sigma_r", p.noise.sigma_r);
    p.noise.sigma_alpha = n.get("sigma_alpha", p.noise.sigma_alpha);
  }
  p.radar_period = s.get("radar_period", p.radar_period);
  p.camera_period = s.get("camera_period", p.camera_period);
  p.fit_range = s.get("fit_range", p.fit_range);
  p.corpus_frames = s.get<std::size_t>("corpus_frames", p.corpus_frames);
  if (s.has("visibility")) {
    for (const auto& row : require_sequence(s.child("visibility"), "perception.visibility")) {
      if (!row.IsSequence() || row.size() != 3) {
        throw ConfigError(line_of(row) + "'perception.visibility' entries must be [t, left, right]");
      }
      p.visibility.push_back({Section::convert<double>(row[0], "perception.visibility"),
                              {Section::convert<bool>(row[1], "perception.visibility"),
                               Section::convert<bool>(row[2], "perception.visibility")}});
    }
  }
  if (s.has("traffic")) {
    for (const auto& item : require_sequence(s.child("traffic"), "perception.traffic")) {
      Section t(item, "perception.traffic", {"lane_offset", "s", "v"});
      TrafficVehicle tv;
      tv.lane_offset = t.get("lane_offset", tv.lane_offset);
      tv.s = t.get("s", tv.s);
      tv.v = t.get("v", tv.v);
      p.traffic.push_back(tv);
    }
  }
  return p;
}

void check(bool ok, const std::string& msg) {
  if (!ok) throw ConfigError(msg);
}

}  // namespace

double PulseProfile::accel_at(double t) const {
  if (t >= start && t < start + width) return accel;
  if (t >= start + width && t < start + 2.0 * width) return -accel;
  return 0.0;
}

Visibility PerceptionConfig::visibility_at(double t) const {
  Visibility v;
  for (const auto& change : visibility) {
    if (change.t <= t + 1e-9) v = change.visibility;
  }
  return v;
}

void ScenarioConfig::validate() const {
  sim.validate();
  check(!followers.empty(), "at least one follower is required");
  check(lead.v_init >= 0.0, "lead.v_init must be non-negative");
  check(lead.length > 0.0, "lead.length must be positive");
  lead.idm.validate();
  if (lead.driver == LeadDriverKind::Replay) check(!lead.trace.empty(), "lead.trace is required for the replay driver");
  if (lead.driver == LeadDriverKind::Pulse) {
    check(lead.pulse.width > 0.0 && lead.pulse.start >= 0.0, "lead.pulse needs start >= 0 and width > 0");
  }
  for (std::size_t i = 0; i < followers.size(); ++i) {
    const auto& f = followers[i];
    const std::string where = "followers[" + std::to_string(i) + "]: ";
    try {
      f.controller.validate();
      f.plant.validate();
      caccsim::validate(f.low_level);
    } catch (const ConfigError& e) {
      throw ConfigError(where + e.what());
    }
    check(f.length > 0.0, where + "length must be positive");
    if (f.controller.mode == ControllerMode::Cacc) {
      check(channel.has_value(), where + "mode cacc requires a 'channel' section");
    }
  }
  if (channel) {
    channel->validate();
    check(channel->period >= sim.dt, "channel.period must be at least sim.dt");
  }
  perception.mounting.validate();
  check(perception.radar_period >= sim.dt, "perception.radar_period must be at least sim.dt");
  check(perception.camera_period >= sim.dt, "perception.camera_period must be at least sim.dt");
  check(perception.fit_range > 0.0, "perception.fit_range must be positive");
  check(perception.noise.sigma_r >= 0.0 && perception.noise.sigma_alpha >= 0.0, "noise sigmas must be non-negative");
  for (std::size_t i = 1; i < perception.visibility.size(); ++i) {
    check(perception.visibility[i].t > perception.visibility[i - 1].t,
          "perception.visibility times must be strictly increasing");
  }
}

ScenarioConfig default_scenario() {
  ScenarioConfig c;
  c.followers.emplace_back();
  return c;
}

ScenarioConfig parse_scenario_text(const std::string& text, const std::string& base_dir) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError("line " + std::to_string(e.mark.line + 1) + ": " + e.msg);
  }
  Section top(root, "scenario", {"sim", "lead", "followers", "channel", "perception", "output"});

  ScenarioConfig c;
  if (top.has("sim")) {
    Section s(top.child("sim"), "sim", {"dt", "duration", "seed"});
    c.sim.dt = s.get("dt", c.sim.dt);
    c.sim.duration = s.get("duration", c.sim.duration);
    c.sim.seed = s.get<std::uint64_t>("seed", c.sim.seed);
  }
  if (top.has("lead")) c.lead = parse_lead(top.child("lead"), base_dir);
  if (!top.has("followers")) throw ConfigError("missing required section 'followers'");
  std::size_t i = 0;
  for (const auto& item : require_sequence(top.child("followers"), "followers")) {
    c.followers.push_back(parse_follower(item, "followers[" + std::to_string(i++) + "]"));
  }
  if (top.has("channel")) c.channel = parse_channel(top.child("channel"));
  if (top.has("perception")) c.perception = parse_perception(top.child("perception"));
  if (top.has("output")) {
    Section o(top.child("output"), "output", {"dir", "plots"});
    c.output.dir = o.get<std::string>("dir", c.output.dir);
    c.output.plots = o.get("plots", c.output.plots);
  }
  c.validate();
  return c;
}

ScenarioConfig parse_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot read scenario file");
  std::stringstream buf;
  buf << in.rdbuf();
  const auto base = std::filesystem::path(path).parent_path();
  try {
    return parse_scenario_text(buf.str(), base.empty() ? "." : base.string());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

namespace {

void emit_idm(YAML::Emitter& out, const IdmParams& p) {
  out << YAML::BeginMap;
  out << YAML::Key << "v0" << YAML::Value << p.v0;
  out << YAML::Key << "s0" << YAML::Value << p.s0;
  out << YAML::Key << "T" << YAML::Value << p.T;
  out << YAML::Key << "a" << YAML::Value << p.a;
  out << YAML::Key << "b" << YAML::Value << p.b;
  out << YAML::Key << "delta" << YAML::Value << p.delta;
  out << YAML::Key << "b_hard" << YAML::Value << p.b_hard;
  out << YAML::EndMap;
}

const char* name_of(LeadDriverKind k) {
  switch (k) {
    case LeadDriverKind::Idm: return "idm";
    case LeadDriverKind::Replay: return "replay";
    case LeadDriverKind::Pulse: return "pulse";
  }
  return "idm";
}

void emit_follower(YAML::Emitter& out, const FollowerConfig& f) {
  const auto& c = f.controller;
  out << YAML::BeginMap;
  out << YAML::Key << "mode" << YAML::Value << (c.mode == ControllerMode::Cacc ? "cacc" : "acc");
  out << YAML::Key << "t_hw" << YAML::Value << c.policy.t_hw;
  out << YAML::Key << "d0" << YAML::Value << c.policy.d0;
  out << YAML::Key << "l" << YAML::Value << c.policy.l;
  out << YAML::Key << "length" << YAML::Value << f.length;
  out << YAML::Key << "w_k" << YAML::Value << c.w_k;
  out << YAML::Key << "tau" << YAML::Value << c.tau;
  out << YAML::Key << "a_min" << YAML::Value << c.a_min;
  out << YAML::Key << "a_max" << YAML::Value << c.a_max;
  out << YAML::Key << "cruise_speed" << YAML::Value << c.cruise_speed;
  out << YAML::Key << "speed_hold_gain" << YAML::Value << c.speed_hold_gain;
  out << YAML::Key << "measurement" << YAML::Value
      << (f.measurement == MeasurementKind::Perception ? "perception" : "truth");
  out << YAML::Key << "low_level" << YAML::Value << YAML::BeginMap;
  if (const auto* lag = std::get_if<IdealLag>(&f.low_level)) {
    out << YAML::Key << "kind" << YAML::Value << "ideal_lag";
    out << YAML::Key << "tau" << YAML::Value << lag->tau;
  } else {
    const auto& pi = std::get<GainScheduledPi>(f.low_level);
    out << YAML::Key << "kind" << YAML::Value << "gain_scheduled_pi";
    out << YAML::Key << "integrator_limit" << YAML::Value << pi.integrator_limit;
    out << YAML::Key << "schedule" << YAML::Value << YAML::BeginSeq;
    for (const auto& p : pi.schedule) {
      out << YAML::Flow << YAML::BeginSeq << p.speed << p.kp << p.ki << YAML::EndSeq;
    }
    out << YAML::EndSeq;
  }
  out << YAML::EndMap;
  const auto& p = f.plant;
  out << YAML::Key << "plant" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "mass" << YAML::Value << p.mass;
  out << YAML::Key << "drag_coeff" << YAML::Value << p.drag_coeff;
  out << YAML::Key << "rolling_coeff" << YAML::Value << p.rolling_coeff;
  out << YAML::Key << "g" << YAML::Value << p.g;
  out << YAML::Key << "actuator_lag" << YAML::Value << p.actuator_lag;
  out << YAML::Key << "force_min" << YAML::Value << p.force_min;
  out << YAML::Key << "force_max" << YAML::Value << p.force_max;
  out << YAML::EndMap;
  out << YAML::EndMap;
}

void emit_road(YAML::Emitter& out, const RoadGeometry& road) {
  out << YAML::BeginMap;
  switch (road.kind()) {
    case RoadKind::Straight:
      out << YAML::Key << "kind" << YAML::Value << "straight";
      break;
    case RoadKind::Arc:
      out << YAML::Key << "kind" << YAML::Value << "arc";
      out << YAML::Key << "radius" << YAML::Value << road.segments().front().radius;
      break;
    case RoadKind::PiecewiseArc:
      out << YAML::Key << "kind" << YAML::Value << "piecewise";
      out << YAML::Key << "segments" << YAML::Value << YAML::BeginSeq;
      for (const auto& seg : road.segments()) {
        out << YAML::Flow << YAML::BeginSeq << seg.length << seg.radius << YAML::EndSeq;
      }
      out << YAML::EndSeq;
      break;
  }
  out << YAML::Key << "lane_width" << YAML::Value << road.lane_width();
  out << YAML::EndMap;
}

}  // namespace

std::string emit_scenario(const ScenarioConfig& c) {
  YAML::Emitter out;
  out.SetDoublePrecision(17);
  out << YAML::BeginMap;

  out << YAML::Key << "sim" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "dt" << YAML::Value << c.sim.dt;
  out << YAML::Key << "duration" << YAML::Value << c.sim.duration;
  out << YAML::Key << "seed" << YAML::Value << c.sim.seed;
  out << YAML::EndMap;

  out << YAML::Key << "lead" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "driver" << YAML::Value << name_of(c.lead.driver);
  out << YAML::Key << "v_init" << YAML::Value << c.lead.v_init;
  out << YAML::Key << "length" << YAML::Value << c.lead.length;
  out << YAML::Key << "idm" << YAML::Value;
  emit_idm(out, c.lead.idm);
  if (!c.lead.schedule.empty()) {
    out << YAML::Key << "schedule" << YAML::Value << YAML::BeginSeq;
    for (const auto& p : c.lead.schedule.points()) {
      out << YAML::Flow << YAML::BeginSeq << p.t << p.v0 << YAML::EndSeq;
    }
    out << YAML::EndSeq;
  }
  if (!c.lead.trace_path.empty()) out << YAML::Key << "trace" << YAML::Value << c.lead.trace_path;
  out << YAML::Key << "pulse" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "start" << YAML::Value << c.lead.pulse.start;
  out << YAML::Key << "width" << YAML::Value << c.lead.pulse.width;
  out << YAML::Key << "accel" << YAML::Value << c.lead.pulse.accel;
  out << YAML::EndMap;
  out << YAML::EndMap;

  out << YAML::Key << "followers" << YAML::Value << YAML::BeginSeq;
  for (const auto& f : c.followers) emit_follower(out, f);
  out << YAML::EndSeq;

  if (c.channel) {
    const auto& ch = *c.channel;
    out << YAML::Key << "channel" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "period" << YAML::Value << ch.period;
    out << YAML::Key << "latency" << YAML::Value << ch.latency;
    out << YAML::Key << "jitter" << YAML::Value << ch.jitter;
    out << YAML::Key << "loss_prob" << YAML::Value << ch.loss_prob;
    out << YAML::Key << "stale_timeout" << YAML::Value << ch.stale_timeout;
    out << YAML::EndMap;
  }

  const auto& p = c.perception;
  out << YAML::Key << "perception" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "road" << YAML::Value;
  emit_road(out, p.road);
  out << YAML::Key << "mounting" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "dx_rc" << YAML::Value << p.mounting.dx_rc;
  out << YAML::Key << "fov_half" << YAML::Value << p.mounting.fov_half;
  out << YAML::Key << "max_range" << YAML::Value << p.mounting.max_range;
  out << YAML::EndMap;
  out << YAML::Key << "noise" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "sigma_r" << YAML::Value << p.noise.sigma_r;
  out << YAML::Key << "sigma_alpha" << YAML::Value << p.noise.sigma_alpha;
  out << YAML::EndMap;
  out << YAML::Key << "radar_period" << YAML::Value << p.radar_period;
  out << YAML::Key << "camera_period" << YAML::Value << p.camera_period;
  out << YAML::Key << "fit_range" << YAML::Value << p.fit_range;
  out << YAML::Key << "corpus_frames" << YAML::Value << p.corpus_frames;
  if (!p.visibility.empty()) {
    out << YAML::Key << "visibility" << YAML::Value << YAML::BeginSeq;
    for (const auto& v : p.visibility) {
      out << YAML::Flow << YAML::BeginSeq << v.t << v.visibility.left << v.visibility.right << YAML::EndSeq;
    }
    out << YAML::EndSeq;
  }
  if (!p.traffic.empty()) {
    out << YAML::Key << "traffic" << YAML::Value << YAML::BeginSeq;
    for (const auto& t : p.traffic) {
      out << YAML::Flow << YAML::BeginMap << YAML::Key << "lane_offset" << YAML::Value << t.lane_offset
          << YAML::Key << "s" << YAML::Value << t.s << YAML::Key << "v" << YAML::Value << t.v << YAML::EndMap;
    }
    out << YAML::EndSeq;
  }
  out << YAML::EndMap;

  out << YAML::Key << "output" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "dir" << YAML::Value << c.output.dir;
  out << YAML::Key << "plots" << YAML::Value << c.output.plots;
  out << YAML::EndMap;

  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

std::string emit_default_config() { return emit_scenario(default_scenario()); }

}  // namespace caccsim
