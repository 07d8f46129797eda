#pragma once

#include <string>
#include <vector>

#include "caccsim/sim.hpp"

namespace caccsim {

struct LabeledTrace {
  std::string label;
  const Trace* trace = nullptr;
};

/// Writes speed.svg, headway.svg and gap.svg into `dir`. Each trace adds one
/// series per follower; the lead speed is drawn once from the first trace.
/// Output depends only on the traces. Throws std::invalid_argument on an empty trace.
void emit_plots(const std::vector<LabeledTrace>& traces, const std::string& dir);

}  // namespace caccsim
