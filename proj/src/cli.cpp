#include "caccsim/cli.hpp"

#include <filesystem>
#include <future>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "caccsim/engine.hpp"
#include "caccsim/errors.hpp"
#include "caccsim/metrics.hpp"
#include "caccsim/plots.hpp"
#include "caccsim/scenario.hpp"
#include "caccsim/trace_io.hpp"

namespace caccsim {

namespace {

namespace fs = std::filesystem;

struct GlobalOptions {
  std::optional<std::uint64_t> seed;
  std::string out;
  bool quiet = false;
};

ScenarioConfig load(const std::string& path, const GlobalOptions& g) {
  auto cfg = parse_scenario(path);
  if (g.seed) cfg.sim.seed = *g.seed;
  return cfg;
}

fs::path output_dir(const ScenarioConfig& cfg, const GlobalOptions& g) {
  fs::path dir = g.out.empty() ? fs::path(cfg.output.dir) : fs::path(g.out);
  fs::create_directories(dir);
  return dir;
}

ScenarioConfig with_mode(ScenarioConfig cfg, ControllerMode mode) {
  for (auto& f : cfg.followers) f.controller.mode = mode;
  return cfg;
}

std::string follower_reports(const Trace& trace, const ScenarioConfig& cfg, const std::string& prefix) {
  std::string out;
  for (std::size_t i = 1; i < trace.vehicle_count(); ++i) {
    const std::string key = trace.follower_count() == 1 ? prefix : fmt::format("{}veh{}.", prefix, i);
    try {
      out += format_report(compute_report(trace, i, cfg.followers[i - 1].controller.policy.t_hw), key);
    } catch (const std::invalid_argument& e) {
      out += fmt::format("{}error={}\n", key, e.what());
    }
  }
  return out;
}

int cmd_run(const std::string& path, const GlobalOptions& g, std::ostream& out) {
  const auto cfg = load(path, g);
  const auto dir = output_dir(cfg, g);
  const auto trace = run_scenario(cfg);
  write_trace_csv(trace, (dir / "trace.csv").string());
  const auto report = follower_reports(trace, cfg, "");
  write_text_file((dir / "metrics.txt").string(), report);
  if (cfg.output.plots) emit_plots({{"", &trace}}, dir.string());
  if (!g.quiet) out << report;
  return trace.collided ? kExitCollision : kExitOk;
}

struct ComparePair {
  Trace acc;
  Trace cacc;
};

ComparePair run_pair(const ScenarioConfig& cfg) {
  return {run_scenario(with_mode(cfg, ControllerMode::Acc)), run_scenario(with_mode(cfg, ControllerMode::Cacc))};
}

int cmd_compare(const std::string& path, const GlobalOptions& g, std::ostream& out) {
  const auto cfg = load(path, g);
  if (!cfg.channel) throw ConfigError(path + ": compare needs a 'channel' section for the CACC run");
  const auto dir = output_dir(cfg, g);
  const auto pair = run_pair(cfg);

  write_trace_csv(pair.acc, (dir / "trace_acc.csv").string());
  write_trace_csv(pair.cacc, (dir / "trace_cacc.csv").string());
  if (cfg.output.plots) emit_plots({{"ACC", &pair.acc}, {"CACC", &pair.cacc}}, dir.string());

  std::string report = follower_reports(pair.acc, cfg, "acc.") + follower_reports(pair.cacc, cfg, "cacc.");
  const double t_hw = cfg.followers.front().controller.policy.t_hw;
  try {
    const auto a = compute_report(pair.acc, 1, t_hw);
    const auto c = compute_report(pair.cacc, 1, t_hw);
    report += fmt::format("delta.headway_rmse_s={:.6f}\n", c.headway_rmse - a.headway_rmse);
    report += fmt::format("delta.max_abs_spacing_error_m={:.6f}\n", c.max_abs_spacing_error - a.max_abs_spacing_error);
    report += fmt::format("delta.min_gap_m={:.6f}\n", c.min_gap - a.min_gap);
  } catch (const std::invalid_argument& e) {
    report += fmt::format("delta.error={}\n", e.what());
  }
  write_text_file((dir / "metrics.txt").string(), report);
  if (!g.quiet) out << report;
  return pair.acc.collided || pair.cacc.collided ? kExitCollision : kExitOk;
}

int cmd_platoon(const std::string& path, std::size_t n, const std::string& mode, const GlobalOptions& g,
                std::ostream& out) {
  auto cfg = load(path, g);
  if (n < 2) throw ConfigError("platoon needs --n of at least 2");
  auto follower = cfg.followers.front();
  if (mode == "acc") follower.controller.mode = ControllerMode::Acc;
  if (mode == "cacc") follower.controller.mode = ControllerMode::Cacc;
  cfg.followers.assign(n, follower);
  cfg.validate();

  const auto dir = output_dir(cfg, g);
  const auto trace = run_scenario(cfg);
  write_trace_csv(trace, (dir / "trace.csv").string());
  if (cfg.output.plots) emit_plots({{"", &trace}}, dir.string());

  std::string report;
  const auto ratios = amplification_ratios(trace, Norm::Linf);
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    report += fmt::format("amplification_ratio_{}={:.6f}\n", i + 1, ratios[i]);
  }
  double worst = 0.0;
  for (double r : ratios) worst = std::max(worst, r);
  report += fmt::format("max_amplification_ratio={:.6f}\n", worst);
  const auto gaps = collision_and_min_gap(trace);
  report += fmt::format("min_gap_m={:.6f}\ncollided={}\n", gaps.min_gap, gaps.collided ? 1 : 0);
  write_text_file((dir / "metrics.txt").string(), report);
  if (!g.quiet) out << report;
  return trace.collided ? kExitCollision : kExitOk;
}

int cmd_perception(const std::string& path, std::optional<std::size_t> frames, const GlobalOptions& g,
                   std::ostream& out) {
  const auto cfg = load(path, g);
  const auto dir = output_dir(cfg, g);
  const auto& p = cfg.perception;
  const auto corpus = make_three_vehicle_corpus(p.road, frames.value_or(p.corpus_frames), cfg.sim.seed);
  CorpusOptions opts;
  opts.mount = p.mounting;
  opts.noise = p.noise;
  opts.visibility = p.visibility_at(0.0);
  opts.fit_range = p.fit_range;
  opts.seed = cfg.sim.seed;
  const auto result = evaluate_corpus(corpus, p.road, opts);

  std::string csv = "frame,id,r,alpha,rdot,selected,truth\n";
  for (std::size_t f = 0; f < result.frames.size(); ++f) {
    const auto& fr = result.frames[f];
    for (const auto& d : fr.detections) {
      csv += fmt::format("{},{},{:.6f},{:.6f},{:.6f},{},{}\n", f, d.id, d.r, d.alpha, d.rdot,
                         fr.selected == d.id ? 1 : 0, fr.truth == d.id ? 1 : 0);
    }
  }
  write_text_file((dir / "perception.csv").string(), csv);
  const std::string report =
      fmt::format("frames={}\nagreement={:.6f}\n", result.frames.size(), result.agreement);
  write_text_file((dir / "metrics.txt").string(), report);
  if (!g.quiet) out << report;
  return kExitOk;
}

int cmd_sweep(const std::string& path, const std::vector<double>& headways, const GlobalOptions& g,
              std::ostream& out) {
  const auto cfg = load(path, g);
  if (headways.empty()) throw ConfigError("sweep needs at least one --t-hw value");
  if (!cfg.channel) throw ConfigError(path + ": sweep needs a 'channel' section for the CACC runs");
  const auto dir = output_dir(cfg, g);

  std::vector<ScenarioConfig> points;
  for (double h : headways) {
    auto c = cfg;
    for (auto& f : c.followers) f.controller.policy.t_hw = h;
    c.validate();
    points.push_back(std::move(c));
  }
  std::vector<std::future<ComparePair>> jobs;
  for (const auto& c : points) jobs.push_back(std::async(std::launch::async, run_pair, std::cref(c)));

  std::string table = "t_hw_s,acc_headway_rmse_s,cacc_headway_rmse_s,acc_max_abs_e_m,cacc_max_abs_e_m,"
                      "acc_min_gap_m,cacc_min_gap_m,acc_collided,cacc_collided\n";
  bool collided = false;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const auto pair = jobs[i].get();
    const double h = headways[i];
    auto rmse = [&](const Trace& t) {
      try {
        return headway_rmse(t, 1, h);
      } catch (const std::invalid_argument&) {
        return std::nan("");
      }
    };
    const auto ga = collision_and_min_gap(pair.acc);
    const auto gc = collision_and_min_gap(pair.cacc);
    collided = collided || ga.collided || gc.collided;
    table += fmt::format("{:.3f},{:.6f},{:.6f},{:.6f},{:.6f},{:.6f},{:.6f},{},{}\n", h, rmse(pair.acc),
                         rmse(pair.cacc), max_abs_spacing_error(pair.acc, 1), max_abs_spacing_error(pair.cacc, 1),
                         ga.min_gap, gc.min_gap, ga.collided ? 1 : 0, gc.collided ? 1 : 0);
  }
  write_text_file((dir / "sweep.csv").string(), table);
  if (!g.quiet) out << table;
  return collided ? kExitCollision : kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Longitudinal ACC/CACC platoon simulator"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  std::uint64_t seed = 0;
  auto* seed_opt = app.add_option("--seed", seed, "Override the scenario seed");
  app.add_option("--out", g.out, "Output directory (default: output.dir from the scenario)");
  app.add_flag("--quiet", g.quiet, "Suppress the report on stdout");

  std::string scenario;
  auto* run = app.add_subcommand("run", "Run a scenario once");
  run->add_option("scenario", scenario, "Scenario file")->required();

  auto* compare = app.add_subcommand("compare", "Run the followers in ACC and then CACC mode");
  compare->add_option("scenario", scenario, "Scenario file")->required();

  std::size_t n = 5;
  std::string mode = "scenario";
  auto* platoon = app.add_subcommand("platoon", "Homogeneous chain built from the first follower");
  platoon->add_option("scenario", scenario, "Scenario file")->required();
  platoon->add_option("--n", n, "Number of followers")->required();
  platoon->add_option("--mode", mode, "acc, cacc, or scenario")
      ->check(CLI::IsMember({"acc", "cacc", "scenario"}));

  std::size_t frames = 0;
  auto* perception = app.add_subcommand("perception", "In-lane target selection corpus versus ground truth");
  perception->add_option("scenario", scenario, "Scenario file")->required();
  auto* frames_opt = perception->add_option("--frames", frames, "Corpus size (default: perception.corpus_frames)");

  std::vector<double> headways;
  auto* sweep = app.add_subcommand("sweep", "ACC/CACC comparison over several time headways");
  sweep->add_option("scenario", scenario, "Scenario file")->required();
  sweep->add_option("--t-hw", headways, "Comma-separated headways [s]")->required()->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfigError;
  }
  if (*seed_opt) g.seed = seed;

  try {
    if (*run) return cmd_run(scenario, g, out);
    if (*compare) return cmd_compare(scenario, g, out);
    if (*platoon) return cmd_platoon(scenario, n, mode, g, out);
    if (*perception) {
      return cmd_perception(scenario, *frames_opt ? std::optional<std::size_t>(frames) : std::nullopt, g, out);
    }
    if (*sweep) return cmd_sweep(scenario, headways, g, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfigError;
  }
  return kExitConfigError;
}

}  // namespace caccsim
