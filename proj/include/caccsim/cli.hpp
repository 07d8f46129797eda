#pragma once

#include <iosfwd>

namespace caccsim {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitCollision = 2;

/// Entry point of the `caccsim` tool: run, compare, platoon, perception, sweep.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace caccsim
