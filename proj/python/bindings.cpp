#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "l4scc/analysis.hpp"
#include "l4scc/control_law.hpp"
#include "l4scc/equilibrium.hpp"
#include "l4scc/fluidsim.hpp"
#include "l4scc/report.hpp"
#include "l4scc/scenario_io.hpp"
#include "l4scc/signal.hpp"

namespace py = pybind11;
using namespace l4scc;

namespace {

py::dict figure_dict(const FigureSeries& fig) {
  py::dict out;
  out["id"] = static_cast<int>(fig.figure_id);
  out["title"] = fig.title;
  py::list axes;
  for (const auto& a : fig.axes)
    axes.append(py::make_tuple(a.label, a.unit, a.scale == AxisScale::log ? "log" : "linear"));
  out["axes"] = axes;
  py::dict curves;
  for (const auto& c : fig.curves) curves[py::str(c.name)] = c.rows;
  out["curves"] = curves;
  return out;
}

py::dict trajectory_dict(const Trajectory& traj) {
  std::vector<double> t, q, p;
  std::vector<std::vector<double>> rates, windows;
  for (const auto& s : traj.samples) {
    t.push_back(s.t);
    q.push_back(s.q);
    p.push_back(s.p);
    rates.push_back(s.rate_bits);
    windows.push_back(s.window);
  }
  py::dict out;
  out["t"] = t;
  out["q"] = q;
  out["p"] = p;
  out["rate_bits"] = rates;
  out["window"] = windows;
  out["verdict"] = traj.verdict;
  return out;
}

SimConfig sim_config(const Scenario& scn, const AqmConfig& aqm, double step, double horizon,
                     double floor, SignalMode mode, double initial_queue) {
  SimConfig cfg;
  cfg.scenario = scn;
  cfg.aqm = aqm;
  cfg.step = step;
  cfg.horizon = horizon;
  cfg.classic_window_floor = floor;
  cfg.mode = mode;
  cfg.initial_queue = initial_queue;
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Steady-state analysis of scalable congestion controls";

  py::class_<SignalLevel>(m, "SignalLevel")
      .def_property_readonly("p", &SignalLevel::p)
      .def_property_readonly("u", [](const SignalLevel& s) -> py::object {
        if (s.unbounded()) return py::float_(std::numeric_limits<double>::infinity());
        return py::float_(s.u());
      })
      .def_property_readonly("virtual_mark_rate", &SignalLevel::virtual_mark_rate)
      .def("__repr__", [](const SignalLevel& s) { return "SignalLevel(p=" + format_number(s.p()) + ")"; });
  m.def("signal_from_p", &signal_from_p, py::arg("p"));
  m.def("signal_from_u", &signal_from_u, py::arg("u"));

  py::enum_<SignalMode>(m, "SignalMode")
      .value("virtual_marks", SignalMode::virtual_marks)
      .value("raw_probability", SignalMode::raw_probability);

  m.def("comp5_marks_per_rtt", &comp5_marks_per_rtt, py::arg("rtt"), py::arg("v0") = defaults::kV0,
        py::arg("r0") = defaults::kR0);
  m.def("comp5_marks_per_sec", &comp5_marks_per_sec, py::arg("rtt"), py::arg("v0") = defaults::kV0,
        py::arg("r0") = defaults::kR0);
  m.def("rate_imbalance_comp5", &rate_imbalance_comp5, py::arg("ri"), py::arg("rj"),
        py::arg("v0") = defaults::kV0, py::arg("r0") = defaults::kR0);
  m.def("saturation_rtt_bound", &saturation_rtt_bound, py::arg("v0"), py::arg("segment"),
        py::arg("rate_bits"));

  py::class_<Scenario>(m, "Scenario")
      .def_readwrite("capacity", &Scenario::capacity)
      .def_readwrite("queue_delay", &Scenario::queue_delay)
      .def_readwrite("classic_queue_delay", &Scenario::classic_queue_delay)
      .def_property_readonly("flow_ids",
                             [](const Scenario& s) {
                               std::vector<std::string> ids;
                               for (const auto& f : s.flows) ids.push_back(f.id);
                               return ids;
                             })
      .def("__eq__", [](const Scenario& a, const Scenario& b) { return a == b; });
  m.def("parse_scenario", &parse_scenario, py::arg("text"), py::arg("allow_empty") = false);
  m.def("load_scenario", [](const std::string& path, bool allow_empty) { return load_scenario(path, allow_empty); },
        py::arg("path"), py::arg("allow_empty") = false);
  m.def("dump_scenario", &dump_scenario, py::arg("scenario"));

  py::class_<FlowState>(m, "FlowState")
      .def_readonly("id", &FlowState::id)
      .def_property_readonly("law", [](const FlowState& f) { return std::string(law_name(f.law)); })
      .def_readonly("rate_pkts", &FlowState::rate_pkts)
      .def_readonly("rate_bits", &FlowState::rate_bits)
      .def_readonly("window", &FlowState::window)
      .def_readonly("total_rtt", &FlowState::total_rtt)
      .def_readonly("marks_per_rtt", &FlowState::marks_per_rtt)
      .def_readonly("saturated", &FlowState::saturated);

  py::class_<Equilibrium>(m, "Equilibrium")
      .def_readonly("signal", &Equilibrium::signal)
      .def_readonly("signal_classic", &Equilibrium::signal_classic)
      .def_readonly("per_flow", &Equilibrium::per_flow)
      .def_readonly("utilization", &Equilibrium::utilization)
      .def_readonly("feasible", &Equilibrium::feasible)
      .def_readonly("iterations", &Equilibrium::iterations);

  py::class_<SolverConfig>(m, "SolverConfig")
      .def(py::init<>())
      .def_readwrite("tol", &SolverConfig::tol)
      .def_readwrite("max_iter", &SolverConfig::max_iter)
      .def_readwrite("mode", &SolverConfig::mode);
  m.def("solve_single_queue", &solve_single_queue, py::arg("scenario"), py::arg("config") = SolverConfig{});
  m.def("solve_dualq", &solve_dualq, py::arg("scenario"), py::arg("config") = SolverConfig{});
  m.def("equilibrium_json", &equilibrium_json, py::arg("scenario"), py::arg("equilibrium"));

  py::enum_<AqmMode>(m, "AqmMode").value("proportional", AqmMode::proportional).value("step", AqmMode::step);
  py::class_<AqmConfig>(m, "AqmConfig")
      .def(py::init<>())
      .def(py::init([](double target, double gain, AqmMode mode) { return AqmConfig{target, gain, mode}; }),
           py::arg("target_delay") = defaults::kL4sQueueDelay, py::arg("gain") = 10.0,
           py::arg("mode") = AqmMode::proportional)
      .def_readwrite("target_delay", &AqmConfig::target_delay)
      .def_readwrite("gain", &AqmConfig::gain)
      .def_readwrite("mode", &AqmConfig::mode)
      .def("marking", &AqmConfig::marking);

  py::class_<SimVerdict>(m, "SimVerdict")
      .def_readonly("converged", &SimVerdict::converged)
      .def_readonly("settled", &SimVerdict::settled)
      .def_readonly("diverged", &SimVerdict::diverged)
      .def_readonly("compared", &SimVerdict::compared)
      .def_readonly("max_rate_error", &SimVerdict::max_rate_error)
      .def_readonly("final_state", &SimVerdict::final_state);

  m.def(
      "simulate",
      [](const Scenario& scn, const AqmConfig& aqm, double step, double horizon, double floor,
         SignalMode mode, double initial_queue) {
        return trajectory_dict(simulate(sim_config(scn, aqm, step, horizon, floor, mode, initial_queue)));
      },
      py::arg("scenario"), py::arg("aqm") = AqmConfig{}, py::arg("step") = 0.0, py::arg("horizon") = 2.0,
      py::arg("classic_window_floor") = 2.0, py::arg("mode") = SignalMode::virtual_marks,
      py::arg("initial_queue") = 0.0);
  m.def(
      "classic_window_floor",
      [](const Scenario& scn, const AqmConfig& aqm, double step, double horizon, double floor) {
        return trajectory_dict(simulate_classic_window_floor(
            sim_config(scn, aqm, step, horizon, floor, SignalMode::virtual_marks, 0.0)));
      },
      py::arg("scenario"), py::arg("aqm") = AqmConfig{}, py::arg("step") = 0.0, py::arg("horizon") = 2.0,
      py::arg("classic_window_floor") = 2.0);

  m.def(
      "table1",
      [](double r1, double r2) {
        py::list rows;
        for (const auto& r : table1(r1, r2, default_queue_cases()))
          rows.append(py::make_tuple(r.label, r.q, r.imbalance));
        return rows;
      },
      py::arg("r1") = 200e-3, py::arg("r2") = 2e-3);
  m.def(
      "figure_data", [](int id) { return figure_dict(figure_data(figure_id_from_int(id))); }, py::arg("id"));
  m.def("status_summary", [] {
    py::list rows;
    for (const auto& r : status_summary()) rows.append(py::make_tuple(r.index, r.requirement, r.status));
    return rows;
  });
}
