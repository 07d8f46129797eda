#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "caccsim/cli.hpp"
#include "caccsim/controller.hpp"
#include "caccsim/engine.hpp"
#include "caccsim/errors.hpp"
#include "caccsim/idm.hpp"
#include "caccsim/metrics.hpp"
#include "caccsim/perception.hpp"
#include "caccsim/scenario.hpp"
#include "caccsim/trace_io.hpp"

namespace py = pybind11;
using namespace caccsim;

namespace {

std::vector<std::optional<double>> column(const Trace& trace, std::size_t vehicle, const std::string& field) {
  if (vehicle >= trace.vehicle_count()) throw py::index_error("vehicle index out of range");
  std::vector<std::optional<double>> out;
  out.reserve(trace.records.size());
  for (const auto& rec : trace.records) {
    const auto& v = rec.vehicles[vehicle];
    if (field == "x") out.emplace_back(v.x);
    else if (field == "v") out.emplace_back(v.v);
    else if (field == "a") out.emplace_back(v.a);
    else if (field == "a_des") out.emplace_back(v.a_des);
    else if (field == "gap") out.push_back(v.gap);
    else if (field == "headway") out.push_back(v.headway);
    else if (field == "spacing_error") out.push_back(v.spacing_error);
    else if (field == "meas_gap") out.push_back(v.meas_gap);
    else if (field == "feedforward") out.emplace_back(v.feedforward);
    else if (field == "bsm_age") out.push_back(v.bsm_age);
    else throw py::key_error("unknown trace field '" + field + "'");
  }
  return out;
}

ScenarioConfig with_mode(ScenarioConfig cfg, const std::string& mode) {
  if (mode != "acc" && mode != "cacc") throw py::value_error("mode must be 'acc' or 'cacc'");
  for (auto& f : cfg.followers) f.controller.mode = mode == "acc" ? ControllerMode::Acc : ControllerMode::Cacc;
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Longitudinal ACC/CACC platoon simulator";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<ControllerFault>(m, "ControllerFault", PyExc_RuntimeError);
  py::register_exception<GeometryError>(m, "GeometryError", PyExc_ValueError);

  py::class_<ScenarioConfig>(m, "Scenario")
      .def_static("load", &parse_scenario, py::arg("path"))
      .def_static("from_text", &parse_scenario_text, py::arg("text"), py::arg("base_dir") = ".")
      .def_static("default", &default_scenario)
      .def("emit", &emit_scenario)
      .def("with_mode", &with_mode, py::arg("mode"))
      .def_property(
          "seed", [](const ScenarioConfig& c) { return c.sim.seed; },
          [](ScenarioConfig& c, std::uint64_t s) { c.sim.seed = s; })
      .def_property(
          "duration", [](const ScenarioConfig& c) { return c.sim.duration; },
          [](ScenarioConfig& c, double d) { c.sim.duration = d; })
      .def_property_readonly("follower_count", [](const ScenarioConfig& c) { return c.followers.size(); })
      .def("__eq__", [](const ScenarioConfig& a, const ScenarioConfig& b) { return a == b; });

  py::class_<Trace>(m, "Trace")
      .def_property_readonly("collided", [](const Trace& t) { return t.collided; })
      .def_property_readonly("collision_vehicle", [](const Trace& t) { return t.collision_vehicle; })
      .def_property_readonly("vehicle_count", &Trace::vehicle_count)
      .def("__len__", [](const Trace& t) { return t.records.size(); })
      .def("time", [](const Trace& t) {
        std::vector<double> out;
        for (const auto& r : t.records) out.push_back(r.t);
        return out;
      })
      .def("column", &column, py::arg("vehicle"), py::arg("field"))
      .def("to_csv", &format_trace_csv)
      .def_static("from_csv", &parse_trace_csv, py::arg("text"));

  m.def("run", &run_scenario, py::arg("scenario"), py::call_guard<py::gil_scoped_release>());

  m.def(
      "headway_rmse",
      [](const Trace& t, std::size_t vehicle, double target, double start) {
        return headway_rmse(t, vehicle, target, MetricsWindow{start});
      },
      py::arg("trace"), py::arg("vehicle"), py::arg("target"), py::arg("start") = 5.0);
  m.def(
      "max_abs_spacing_error",
      [](const Trace& t, std::size_t vehicle, double start) {
        return max_abs_spacing_error(t, vehicle, MetricsWindow{start});
      },
      py::arg("trace"), py::arg("vehicle"), py::arg("start") = 5.0);
  m.def(
      "amplification_ratios",
      [](const Trace& t, const std::string& norm) {
        if (norm != "linf" && norm != "l2") throw py::value_error("norm must be 'linf' or 'l2'");
        return amplification_ratios(t, norm == "linf" ? Norm::Linf : Norm::L2);
      },
      py::arg("trace"), py::arg("norm") = "linf");
  m.def(
      "collision_and_min_gap",
      [](const Trace& t) {
        const auto g = collision_and_min_gap(t);
        return py::make_tuple(g.collided, g.min_gap);
      },
      py::arg("trace"));
  m.def("time_headway", &time_headway, py::arg("gap"), py::arg("v_host"));

  m.def(
      "desired_spacing",
      [](double v, double t_hw, double d0) { return desired_spacing(v, SpacingPolicy{t_hw, d0}); },
      py::arg("v_host"), py::arg("t_hw") = 1.0, py::arg("d0") = 3.0);
  m.def(
      "gains_from_bandwidth",
      [](double w_k) {
        const auto g = gains_from_bandwidth(w_k);
        return py::make_tuple(g.k_p, g.k_d);
      },
      py::arg("w_k"));

  py::class_<FeedforwardFilter>(m, "FeedforwardFilter")
      .def(py::init<double, double>(), py::arg("tau"), py::arg("t_hw"))
      .def("step", &FeedforwardFilter::step, py::arg("a_target"), py::arg("dt"))
      .def("reset", &FeedforwardFilter::reset)
      .def_property_readonly("state", &FeedforwardFilter::state);

  py::class_<IdmParams>(m, "IdmParams")
      .def(py::init<>())
      .def_readwrite("v0", &IdmParams::v0)
      .def_readwrite("s0", &IdmParams::s0)
      .def_readwrite("T", &IdmParams::T)
      .def_readwrite("a", &IdmParams::a)
      .def_readwrite("b", &IdmParams::b)
      .def_readwrite("delta", &IdmParams::delta)
      .def_readwrite("b_hard", &IdmParams::b_hard);
  m.def("idm_desired_gap", &idm_desired_gap, py::arg("v"), py::arg("dv"), py::arg("params") = IdmParams{});
  m.def("idm_acceleration", &idm_acceleration, py::arg("v"), py::arg("gap"), py::arg("dv"),
        py::arg("params") = IdmParams{});
  m.def("idm_equilibrium_gap", &idm_equilibrium_gap, py::arg("v"), py::arg("params") = IdmParams{});

  m.def(
      "polar_to_cartesian",
      [](double r, double alpha, double rdot) {
        const auto c = polar_to_cartesian(RadarDetection{0, r, alpha, rdot});
        return py::make_tuple(c.x, c.y, c.v_rel);
      },
      py::arg("r"), py::arg("alpha"), py::arg("rdot") = 0.0);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::vector<const char*> argv{"caccsim"};
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
