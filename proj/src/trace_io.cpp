#include "caccsim/trace_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

namespace caccsim {

namespace {

constexpr std::size_t kColumnsPerVehicle = 12;

void put(std::string& line, double v) { line += fmt::format(",{:.6f}", v); }

void put(std::string& line, const std::optional<double>& v) {
  line += ',';
  if (v) line += fmt::format("{:.6f}", *v);
}

void put(std::string& line, const std::optional<int>& v) {
  line += ',';
  if (v) line += std::to_string(*v);
}

double round6(double v) { return std::stod(fmt::format("{:.6f}", v)); }

std::optional<double> round6(const std::optional<double>& v) {
  return v ? std::optional<double>(round6(*v)) : std::nullopt;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double to_double(const std::string& s, std::size_t row) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw std::runtime_error("trace CSV row " + std::to_string(row) + ": bad number '" + s + "'");
  }
  return v;
}

std::optional<double> to_opt_double(const std::string& s, std::size_t row) {
  if (s.empty()) return std::nullopt;
  return to_double(s, row);
}

std::optional<int> to_opt_int(const std::string& s, std::size_t row) {
  if (s.empty()) return std::nullopt;
  int v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw std::runtime_error("trace CSV row " + std::to_string(row) + ": bad integer '" + s + "'");
  }
  return v;
}

}  // namespace

std::vector<std::string> trace_csv_header(std::size_t vehicles) {
  static const char* const kFields[kColumnsPerVehicle] = {"x_m",  "v_mps",     "a_mps2",  "ades_mps2",
                                                          "gap_m", "h_s",      "e_m",     "measgap_m",
                                                          "ff_mps2", "target", "bsmage_s", "hold"};
  std::vector<std::string> cols{"t_s"};
  for (std::size_t k = 0; k < vehicles; ++k) {
    for (const char* f : kFields) cols.push_back(fmt::format("veh{}_{}", k, f));
  }
  cols.emplace_back("collision_vehicle");
  return cols;
}

std::string format_trace_csv(const Trace& trace) {
  std::string out;
  const auto header = trace_csv_header(trace.vehicle_count());
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i > 0) out += ',';
    out += header[i];
  }
  out += '\n';

  for (std::size_t r = 0; r < trace.records.size(); ++r) {
    const auto& rec = trace.records[r];
    std::string line = fmt::format("{:.6f}", rec.t);
    for (const auto& v : rec.vehicles) {
      put(line, v.x);
      put(line, v.v);
      put(line, v.a);
      put(line, v.a_des);
      put(line, v.gap);
      put(line, v.headway);
      put(line, v.spacing_error);
      put(line, v.meas_gap);
      put(line, v.feedforward);
      put(line, v.target_id);
      put(line, v.bsm_age);
      line += v.speed_hold ? ",1" : ",0";
    }
    line += ',';
    const bool last = r + 1 == trace.records.size();
    if (last && trace.collided && trace.collision_vehicle) line += std::to_string(*trace.collision_vehicle);
    out += line;
    out += '\n';
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

void write_trace_csv(const Trace& trace, const std::string& path) { write_text_file(path, format_trace_csv(trace)); }

Trace parse_trace_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("trace CSV is empty");
  const auto header = split(line);
  if (header.size() < 2 || (header.size() - 2) % kColumnsPerVehicle != 0) {
    throw std::runtime_error("trace CSV header has an unexpected column count");
  }
  const std::size_t vehicles = (header.size() - 2) / kColumnsPerVehicle;
  if (header != trace_csv_header(vehicles)) throw std::runtime_error("trace CSV header does not match the schema");

  Trace trace;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != header.size()) {
      throw std::runtime_error("trace CSV row " + std::to_string(row) + " has the wrong number of fields");
    }
    TraceRecord rec;
    rec.t = to_double(f[0], row);
    for (std::size_t k = 0; k < vehicles; ++k) {
      const std::size_t b = 1 + k * kColumnsPerVehicle;
      VehicleSample v;
      v.x = to_double(f[b], row);
      v.v = to_double(f[b + 1], row);
      v.a = to_double(f[b + 2], row);
      v.a_des = to_double(f[b + 3], row);
      v.gap = to_opt_double(f[b + 4], row);
      v.headway = to_opt_double(f[b + 5], row);
      v.spacing_error = to_opt_double(f[b + 6], row);
      v.meas_gap = to_opt_double(f[b + 7], row);
      v.feedforward = to_double(f[b + 8], row);
      v.target_id = to_opt_int(f[b + 9], row);
      v.bsm_age = to_opt_double(f[b + 10], row);
      v.speed_hold = f[b + 11] == "1";
      rec.vehicles.push_back(v);
    }
    if (const auto hit = to_opt_int(f.back(), row)) {
      trace.collided = true;
      trace.collision_vehicle = static_cast<std::size_t>(*hit);
    }
    trace.records.push_back(std::move(rec));
  }
  return trace;
}

Trace read_trace_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_trace_csv(buf.str());
}

Trace quantize_trace(const Trace& trace) {
  Trace out = trace;
  for (auto& rec : out.records) {
    rec.t = round6(rec.t);
    for (auto& v : rec.vehicles) {
      v.x = round6(v.x);
      v.v = round6(v.v);
      v.a = round6(v.a);
      v.a_des = round6(v.a_des);
      v.gap = round6(v.gap);
      v.headway = round6(v.headway);
      v.spacing_error = round6(v.spacing_error);
      v.meas_gap = round6(v.meas_gap);
      v.feedforward = round6(v.feedforward);
      v.bsm_age = round6(v.bsm_age);
    }
  }
  return out;
}

}  // namespace caccsim
