#include "caccsim/plots.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>
#include <optional>
#include <stdexcept>

#include <fmt/format.h>

#include "caccsim/trace_io.hpp"

namespace caccsim {

namespace {

constexpr double kWidth = 900.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 160.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

struct Series {
  std::string label;
  std::vector<double> t;
  std::vector<std::optional<double>> y;
  bool dashed = false;
};

// Round a span to 1, 2 or 5 times a power of ten.
double nice_step(double span) {
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double r = raw / mag;
  return (r < 1.5 ? 1.0 : r < 3.5 ? 2.0 : r < 7.5 ? 5.0 : 10.0) * mag;
}

std::string render(const std::string& title, const std::string& ylabel, const std::vector<Series>& series) {
  double t_min = std::numeric_limits<double>::infinity(), t_max = -t_min;
  double y_min = t_min, y_max = -t_min;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.t.size(); ++i) {
      t_min = std::min(t_min, s.t[i]);
      t_max = std::max(t_max, s.t[i]);
      if (s.y[i]) {
        y_min = std::min(y_min, *s.y[i]);
        y_max = std::max(y_max, *s.y[i]);
      }
    }
  }
  if (!std::isfinite(y_min)) y_min = 0.0, y_max = 1.0;
  if (y_max - y_min < 1e-9) y_min -= 0.5, y_max += 0.5;
  if (!(t_max > t_min)) t_max = t_min + 1.0;
  const double y_step = nice_step(y_max - y_min);
  y_min = std::floor(y_min / y_step) * y_step;
  y_max = std::ceil(y_max / y_step) * y_step;
  const double t_step = nice_step(t_max - t_min);

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double t) { return kLeft + (t - t_min) / (t_max - t_min) * pw; };
  auto py = [&](double y) { return kTop + (y_max - y) / (y_max - y_min) * ph; };

  std::string svg;
  svg += fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0:.0f}\" height=\"{1:.0f}\" viewBox=\"0 0 {0:.0f} {1:.0f}\" "
      "font-family=\"sans-serif\" font-size=\"12\">\n",
      kWidth, kHeight);
  svg += fmt::format("<rect width=\"{:.0f}\" height=\"{:.0f}\" fill=\"white\"/>\n", kWidth, kHeight);
  svg += fmt::format("<text x=\"{:.1f}\" y=\"22\" font-size=\"15\" text-anchor=\"middle\">{}</text>\n",
                     kLeft + pw / 2.0, title);

  for (double y = y_min; y <= y_max + y_step * 1e-6; y += y_step) {
    svg += fmt::format("<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"#dddddd\"/>\n", kLeft,
                       py(y), kLeft + pw, py(y));
    svg += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"end\">{:g}</text>\n", kLeft - 6.0, py(y) + 4.0,
                       std::abs(y) < y_step * 1e-9 ? 0.0 : y);
  }
  for (double t = std::ceil(t_min / t_step) * t_step; t <= t_max + t_step * 1e-6; t += t_step) {
    svg += fmt::format("<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"#dddddd\"/>\n", px(t),
                       kTop, px(t), kTop + ph);
    svg += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">{:g}</text>\n", px(t),
                       kTop + ph + 18.0, t);
  }
  svg += fmt::format("<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" fill=\"none\" "
                     "stroke=\"black\"/>\n",
                     kLeft, kTop, pw, ph);
  svg += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">time [s]</text>\n", kLeft + pw / 2.0,
                     kHeight - 10.0);
  svg += fmt::format("<text x=\"16\" y=\"{:.2f}\" text-anchor=\"middle\" transform=\"rotate(-90 16 {:.2f})\">{}</text>\n",
                     kTop + ph / 2.0, kTop + ph / 2.0, ylabel);

  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* color = kPalette[k % std::size(kPalette)];
    const std::string dash = s.dashed ? " stroke-dasharray=\"6 4\"" : "";
    std::string points;
    auto flush = [&] {
      if (!points.empty()) {
        svg += fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\"{} points=\"{}\"/>\n", color,
                           dash, points);
      }
      points.clear();
    };
    for (std::size_t i = 0; i < s.t.size(); ++i) {
      if (!s.y[i]) {
        flush();
        continue;
      }
      if (!points.empty()) points += ' ';
      points += fmt::format("{:.2f},{:.2f}", px(s.t[i]), py(*s.y[i]));
    }
    flush();

    const double ly = kTop + 14.0 + 18.0 * static_cast<double>(k);
    svg += fmt::format("<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"{}\" "
                       "stroke-width=\"2\"{}/>\n",
                       kLeft + pw + 10.0, ly, kLeft + pw + 34.0, ly, color, dash);
    svg += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\">{}</text>\n", kLeft + pw + 40.0, ly + 4.0, s.label);
  }
  svg += "</svg>\n";
  return svg;
}

template <typename Get>
Series extract(const Trace& trace, std::size_t vehicle, std::string label, Get get) {
  Series s;
  s.label = std::move(label);
  for (const auto& rec : trace.records) {
    s.t.push_back(rec.t);
    s.y.push_back(get(rec.vehicles[vehicle]));
  }
  return s;
}

std::string follower_label(const std::string& run, std::size_t i) {
  return run.empty() ? fmt::format("veh{}", i) : fmt::format("{} veh{}", run, i);
}

}  // namespace

void emit_plots(const std::vector<LabeledTrace>& traces, const std::string& dir) {
  if (traces.empty()) throw std::invalid_argument("no traces to plot");
  for (const auto& lt : traces) {
    if (lt.trace == nullptr || lt.trace->records.empty()) throw std::invalid_argument("cannot plot an empty trace");
  }
  std::filesystem::create_directories(dir);

  std::vector<Series> speed, headway, gap;
  speed.push_back(extract(*traces.front().trace, 0, "lead", [](const VehicleSample& v) {
    return std::optional<double>(v.v);
  }));
  speed.back().dashed = true;
  for (const auto& lt : traces) {
    for (std::size_t i = 1; i < lt.trace->vehicle_count(); ++i) {
      const auto label = follower_label(lt.label, i);
      speed.push_back(extract(*lt.trace, i, label, [](const VehicleSample& v) { return std::optional<double>(v.v); }));
      headway.push_back(extract(*lt.trace, i, label, [](const VehicleSample& v) { return v.headway; }));
      gap.push_back(extract(*lt.trace, i, label, [](const VehicleSample& v) { return v.gap; }));
    }
  }

  const auto base = std::filesystem::path(dir);
  write_text_file((base / "speed.svg").string(), render("Speed", "speed [m/s]", speed));
  write_text_file((base / "headway.svg").string(), render("Time headway", "headway [s]", headway));
  write_text_file((base / "gap.svg").string(), render("Clearance", "gap [m]", gap));
}

}  // namespace caccsim
