#pragma once

#include "caccsim/scenario.hpp"
#include "caccsim/sim.hpp"

namespace caccsim {

/// Runs the platoon: lead driver, followers' sensors, upper controllers,
/// low-level loops and the V2V channel on a fixed step. Sensors and the channel
/// update on their own periods and are held in between. A collision ends the
/// trace at the step it is detected.
Trace run_scenario(const ScenarioConfig& scenario);

}  // namespace caccsim
