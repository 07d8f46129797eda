#include "caccsim/engine.hpp"

#include <cmath>
#include <random>

#include "caccsim/errors.hpp"
#include "caccsim/metrics.hpp"

namespace caccsim {

namespace {

constexpr int kTrafficIdBase = 100;

std::size_t period_steps(double period, double dt) {
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(period / dt)));
}

std::mt19937_64 radar_stream(std::uint64_t seed, std::size_t vehicle) {
  std::seed_seq sseq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                     static_cast<std::uint32_t>(vehicle), 0x52414452u};
  return std::mt19937_64(sseq);
}

// Latest sensor outputs, held until the next frame.
struct SensorHold {
  std::optional<Measurement> measurement;
  std::optional<int> target;
  CameraFrame camera;
};

class Platoon {
 public:
  explicit Platoon(const ScenarioConfig& sc) : sc_(sc), n_(sc.followers.size() + 1) {
    const auto& lead = sc.lead;
    const double v0 = lead.driver == LeadDriverKind::Replay ? lead.trace.samples().front().v : lead.v_init;

    lengths_.push_back(lead.length);
    for (const auto& f : sc.followers) lengths_.push_back(f.length);

    // Followers start at their policy equilibrium; the last one sits at x = 0.
    states_.assign(n_, VehicleState{0.0, v0, 0.0});
    for (std::size_t i = n_ - 1; i >= 1; --i) {
      const auto& policy = sc.followers[i - 1].controller.policy;
      states_[i - 1].x = states_[i].x + desired_spacing(v0, policy) + policy.l;
    }
    lead_x0_ = states_[0].x;

    for (std::size_t i = 0; i < sc.followers.size(); ++i) {
      controllers_.emplace_back(sc.followers[i].controller);
      powertrains_.emplace_back();
      holds_.emplace_back();
      radar_rngs_.push_back(radar_stream(sc.sim.seed, i + 1));
    }
    if (sc.channel) channel_.emplace(*sc.channel, sc.sim.seed);
  }

  Trace run() {
    const double dt = sc_.sim.dt;
    const std::size_t steps = sc_.sim.step_count();
    const std::size_t radar_steps = period_steps(sc_.perception.radar_period, dt);
    const std::size_t camera_steps = period_steps(sc_.perception.camera_period, dt);
    const std::size_t bsm_steps = channel_ ? period_steps(channel_->params().period, dt) : 0;

    Trace trace;
    trace.records.reserve(steps + 1);
    std::vector<double> accel(n_, 0.0);

    for (std::size_t k = 0; k <= steps; ++k) {
      const double t = static_cast<double>(k) * dt;
      TraceRecord rec{t, std::vector<VehicleSample>(n_)};

      if (channel_ && k % bsm_steps == 0) broadcast(k / bsm_steps, t);

      accel[0] = lead_command(t);
      rec.vehicles[0] = sample_of(0);
      rec.vehicles[0].a_des = accel[0];

      for (std::size_t i = 1; i < n_; ++i) {
        if (k % camera_steps == 0) refresh_camera(i, t);
        if (k % radar_steps == 0) refresh_radar(i, t);
        auto& s = rec.vehicles[i];
        s = sample_of(i);

        std::optional<double> a_target;
        if (channel_) {
          if (const auto rx = channel_->latest_accel(static_cast<int>(i - 1), t)) {
            a_target = rx->accel;
            s.bsm_age = rx->age;
          }
        }
        const auto& hold = holds_[i - 1];
        const auto out = controllers_[i - 1].update(hold.measurement, states_[i].v, states_[i].a, a_target, dt);
        s.a_des = out.a_des;
        s.feedforward = out.feedforward;
        s.speed_hold = out.speed_hold;
        s.target_id = hold.target;
        if (hold.measurement) s.meas_gap = hold.measurement->gap;

        const auto& fc = sc_.followers[i - 1];
        accel[i] = low_level_step(fc.low_level, fc.plant, states_[i], out.a_des, dt, powertrains_[i - 1]);
      }

      for (std::size_t i = 1; i < n_; ++i) {
        if (*rec.vehicles[i].gap <= 0.0) {
          trace.collided = true;
          trace.collision_vehicle = i;
          break;
        }
      }
      trace.records.push_back(std::move(rec));
      if (trace.collided || k == steps) break;

      advance_lead(accel[0], t + dt, dt);
      for (std::size_t i = 1; i < n_; ++i) states_[i] = integrate_step(states_[i], accel[i], dt);
    }
    return trace;
  }

 private:
  double lead_command(double t) const {
    const auto& lead = sc_.lead;
    switch (lead.driver) {
      case LeadDriverKind::Idm: {
        IdmParams p = lead.idm;
        if (!lead.schedule.empty()) p.v0 = lead.schedule.at(t);
        return idm_acceleration(states_[0].v, kFreeRoad, 0.0, p);
      }
      case LeadDriverKind::Pulse:
        return lead.pulse.accel_at(t);
      case LeadDriverKind::Replay:
        return replay_driver(lead.trace, t).a;
    }
    return 0.0;
  }

  void advance_lead(double accel, double t_next, double dt) {
    if (sc_.lead.driver != LeadDriverKind::Replay) {
      states_[0] = integrate_step(states_[0], accel, dt);
      return;
    }
    const auto s = replay_driver(sc_.lead.trace, t_next);
    states_[0] = {states_[0].x + s.v * dt, s.v, s.a};
  }

  void broadcast(std::size_t seq, double t) {
    for (std::size_t i = 0; i + 1 < n_; ++i) {
      const auto& st = states_[i];
      channel_->broadcast(Bsm{static_cast<int>(i), seq, t, st.a, st.v, st.x});
    }
  }

  // Clearance as the follower computes it from positions and its assumed target length.
  double policy_gap(std::size_t i) const {
    return states_[i - 1].x - states_[i].x - sc_.followers[i - 1].controller.policy.l;
  }

  VehicleSample sample_of(std::size_t i) const {
    VehicleSample s;
    s.x = states_[i].x;
    s.v = states_[i].v;
    s.a = states_[i].a;
    if (i == 0) return s;
    const double gap = states_[i - 1].x - lengths_[i - 1] - states_[i].x;
    s.gap = gap;
    s.headway = time_headway(gap, states_[i].v);
    s.spacing_error = spacing_error(policy_gap(i), states_[i].v, sc_.followers[i - 1].controller.policy);
    return s;
  }

  std::vector<WorldVehicle> world(double t) const {
    std::vector<WorldVehicle> out;
    for (std::size_t i = 0; i < n_; ++i) {
      out.push_back({static_cast<int>(i), states_[i].x, 0.0, states_[i].v, lengths_[i]});
    }
    const auto& traffic = sc_.perception.traffic;
    for (std::size_t j = 0; j < traffic.size(); ++j) {
      const auto& tv = traffic[j];
      out.push_back({kTrafficIdBase + static_cast<int>(j), lead_x0_ + tv.s + tv.v * t, tv.lane_offset, tv.v,
                     sc_.lead.length});
    }
    return out;
  }

  void refresh_camera(std::size_t i, double t) {
    const auto& fc = sc_.followers[i - 1];
    if (fc.measurement != MeasurementKind::Perception) return;
    const auto& p = sc_.perception;
    const WorldVehicle ego{static_cast<int>(i), states_[i].x, 0.0, states_[i].v, lengths_[i]};
    holds_[i - 1].camera = simulate_camera(p.road, ego, p.mounting, p.visibility_at(t), p.fit_range);
  }

  void refresh_radar(std::size_t i, double t) {
    auto& hold = holds_[i - 1];
    const auto& fc = sc_.followers[i - 1];
    if (fc.measurement == MeasurementKind::Truth) {
      hold.measurement = Measurement{policy_gap(i), states_[i - 1].v - states_[i].v};
      hold.target = static_cast<int>(i - 1);
      return;
    }
    const auto& p = sc_.perception;
    const auto others = world(t);
    const WorldVehicle ego{static_cast<int>(i), states_[i].x, 0.0, states_[i].v, lengths_[i]};
    const auto dets = simulate_radar(others, ego, p.road, p.mounting, p.noise, radar_rngs_[i - 1]);
    const auto sel = select_in_lane_target(dets, hold.camera.left, hold.camera.right, p.mounting, p.road.lane_width());
    if (sel) {
      hold.measurement = Measurement{sel->x - p.mounting.dx_rc, sel->v_rel};
      hold.target = sel->id;
    } else {
      hold.measurement.reset();
      hold.target.reset();
    }
  }

  const ScenarioConfig& sc_;
  std::size_t n_;
  std::vector<double> lengths_;
  std::vector<VehicleState> states_;
  double lead_x0_ = 0.0;
  std::vector<UpperController> controllers_;
  std::vector<PowertrainState> powertrains_;
  std::vector<SensorHold> holds_;
  std::vector<std::mt19937_64> radar_rngs_;
  std::optional<V2vChannel> channel_;
};

}  // namespace

Trace run_scenario(const ScenarioConfig& scenario) {
  scenario.validate();
  Platoon platoon(scenario);
  return platoon.run();
}

}  // namespace caccsim
