#pragma once

#include <string>
#include <vector>

#include "caccsim/sim.hpp"

namespace caccsim {

/// Column names in file order: `t_s`, then per vehicle k the fields
/// `vehK_x_m, vehK_v_mps, vehK_a_mps2, vehK_ades_mps2, vehK_gap_m, vehK_h_s,
/// vehK_e_m, vehK_measgap_m, vehK_ff_mps2, vehK_target, vehK_bsmage_s, vehK_hold`,
/// then `collision_vehicle`.
std::vector<std::string> trace_csv_header(std::size_t vehicles);

/// Fixed 6 decimals, comma separated, LF endings; absent values are empty fields.
std::string format_trace_csv(const Trace& trace);
void write_trace_csv(const Trace& trace, const std::string& path);

Trace parse_trace_csv(const std::string& text);
Trace read_trace_csv(const std::string& path);

/// The trace as it reads back from CSV: every real value rounded to 6 decimals.
Trace quantize_trace(const Trace& trace);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace caccsim
