#include "caccsim/sim.hpp"

#include <cmath>
#include <string>

#include "caccsim/errors.hpp"

namespace caccsim {

void SimConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("sim.dt must be positive");
  if (!(duration >= dt) || !std::isfinite(duration)) throw ConfigError("sim.duration must be at least sim.dt");
}

std::size_t SimConfig::step_count() const {
  return static_cast<std::size_t>(std::llround(duration / dt));
}

VehicleState integrate_step(const VehicleState& state, double accel, double dt) {
  if (!std::isfinite(accel)) {
    throw ControllerFault("non-finite acceleration command");
  }
  VehicleState next;
  double v = state.v + accel * dt;
  if (v < 0.0) {
    v = 0.0;
    next.a = (v - state.v) / dt;
  } else {
    next.a = accel;
  }
  next.v = v;
  next.x = state.x + v * dt;
  return next;
}

}  // namespace caccsim
