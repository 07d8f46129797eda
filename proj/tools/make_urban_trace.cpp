// Generates the bundled urban stop-and-go lead profile by driving an
// aggressive IDM vehicle through a fixed set-speed schedule.
#include <cstdio>
#include <iostream>
#include <string>

#include <fmt/format.h>

#include "caccsim/idm.hpp"
#include "caccsim/sim.hpp"
#include "caccsim/trace_io.hpp"

int main(int argc, char** argv) {
  using namespace caccsim;

  IdmParams p;
  p.a = 2.5;
  p.b = 3.0;
  p.b_hard = 3.0;
  const SetSpeedSchedule schedule({{0.0, 8.33},
                                   {12.0, 13.89},
                                   {26.0, 2.78},
                                   {38.0, 11.11},
                                   {50.0, 4.17},
                                   {58.0, 15.28},
                                   {74.0, 2.78},
                                   {84.0, 9.72},
                                   {96.0, 13.89},
                                   {108.0, 4.17}});

  constexpr double dt = 0.01;
  constexpr int steps = 12000;
  constexpr int every = 10;

  std::string csv = "t,v,a\n";
  VehicleState s{0.0, 0.0, 0.0};
  for (int k = 0; k <= steps; ++k) {
    const double t = k * dt;
    p.v0 = schedule.at(t);
    const double a = idm_acceleration(s.v, kFreeRoad, 0.0, p);
    if (k % every == 0) csv += fmt::format("{:.2f},{:.6f},{:.6f}\n", t, s.v, a);
    s = integrate_step(s, a, dt);
  }

  if (argc > 1) {
    write_text_file(argv[1], csv);
  } else {
    std::cout << csv;
  }
  return 0;
}
