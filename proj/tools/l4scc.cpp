// l4scc: steady-state analysis of Scalable congestion controls.
//
//   l4scc table1 [--r1 200ms] [--r2 2ms] [--q 1s ...]
//   l4scc fig --id 5 [--out DIR]
//   l4scc solve scenario.yaml [--json] [--capacity 10Gb/s]
//   l4scc simulate scenario.yaml [--no-virtual-marks] [--out traj.csv]
//   l4scc status
//
// Exit codes: 0 success, 2 usage or parse error, 3 infeasible/saturated.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "l4scc/analysis.hpp"
#include "l4scc/equilibrium.hpp"
#include "l4scc/error.hpp"
#include "l4scc/fluidsim.hpp"
#include "l4scc/report.hpp"
#include "l4scc/scenario_io.hpp"
#include "l4scc/units.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitInfeasible = 3;

using namespace l4scc;

struct Table1Args {
  std::string r1 = "200ms";
  std::string r2 = "2ms";
  std::vector<std::string> extra_q;
};

struct FigArgs {
  std::vector<std::string> ids;
  std::string out = ".";
  std::string v0, c0, r0, segment;
  std::size_t per_decade = 0;
  std::size_t grid_points = 0;
};

struct SolveArgs {
  std::string scenario;
  std::string capacity;
  double tol = 1e-6;
  bool json = false;
  bool no_virtual_marks = false;
};

struct SimArgs {
  std::string scenario;
  std::string capacity;
  std::string horizon = "2s";
  std::string step;
  std::string target;
  std::string initial_queue;
  double gain = 10.0;
  std::string aqm = "proportional";
  std::string out;
  double floor = 2.0;
  bool classic_floor = false;
  bool no_virtual_marks = false;
};

int run_table1(const Table1Args& a) {
  const double r1 = parse_quantity(a.r1, Dimension::time);
  const double r2 = parse_quantity(a.r2, Dimension::time);
  auto cases = default_queue_cases();
  for (const auto& q : a.extra_q) cases.push_back({"q=" + q, parse_quantity(q, Dimension::time)});
  std::cout << table1_csv(table1(r1, r2, cases));
  return kExitOk;
}

int run_fig(const FigArgs& a) {
  FigureParams params;
  if (!a.v0.empty()) params.v0 = parse_quantity(a.v0, Dimension::dimensionless);
  if (!a.c0.empty()) params.c0 = parse_quantity(a.c0, Dimension::dimensionless);
  if (!a.r0.empty()) params.r0 = parse_quantity(a.r0, Dimension::time);
  if (!a.segment.empty()) params.segment = parse_quantity(a.segment, Dimension::size);
  if (a.per_decade) params.per_decade = a.per_decade;
  if (a.grid_points) params.grid_points = a.grid_points;

  std::vector<FigureId> ids;
  for (const auto& s : a.ids) {
    if (s == "all") {
      for (int i = 1; i <= 5; ++i) ids.push_back(figure_id_from_int(i));
      continue;
    }
    int n = 0;
    try {
      std::size_t used = 0;
      n = std::stoi(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
    } catch (const std::exception&) {
      throw ParseError("figure id must be 1..5 or 'all', got '" + s + "'");
    }
    ids.push_back(figure_id_from_int(n));
  }

  const std::filesystem::path dir(a.out);
  std::filesystem::create_directories(dir);
  for (FigureId id : ids) {
    const FigureSeries fig = figure_data(id, params);
    std::size_t points = 0;
    double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
    bool first = true;
    for (const auto& c : fig.curves) {
      write_file_atomic(dir / (curve_file_stem(fig, c) + ".csv"), curve_csv(fig, c));
      for (const auto& row : c.rows) {
        ++points;
        if (first) {
          xmin = xmax = row[0];
          ymin = ymax = row[1];
          first = false;
        }
        xmin = std::min(xmin, row[0]);
        xmax = std::max(xmax, row[0]);
        ymin = std::min(ymin, row[1]);
        ymax = std::max(ymax, row[1]);
      }
    }
    const std::string stem = "fig" + std::to_string(static_cast<int>(id));
    write_file_atomic(dir / (stem + ".json"), figure_json(fig));
    std::cout << stem << ": " << fig.curves.size() << " series, " << points << " points, "
              << fig.axes[0].label << " in [" << format_number(xmin) << ", "
              << format_number(xmax) << "], " << fig.axes[1].label << " in ["
              << format_number(ymin) << ", " << format_number(ymax) << "]\n";
  }
  return kExitOk;
}

int run_solve(const SolveArgs& a) {
  Scenario scn = load_scenario(a.scenario);
  if (!a.capacity.empty()) scn.capacity = parse_quantity(a.capacity, Dimension::rate);
  SolverConfig cfg;
  cfg.tol = a.tol;
  cfg.mode = a.no_virtual_marks ? SignalMode::raw_probability : SignalMode::virtual_marks;
  const Equilibrium eq = solve_dualq(scn, cfg);
  std::cout << (a.json ? equilibrium_json(scn, eq) : equilibrium_text(scn, eq));
  return eq.feasible ? kExitOk : kExitInfeasible;
}

int run_simulate(const SimArgs& a) {
  SimConfig cfg;
  cfg.scenario = load_scenario(a.scenario, /*allow_empty=*/true);
  if (!a.capacity.empty()) cfg.scenario.capacity = parse_quantity(a.capacity, Dimension::rate);
  cfg.horizon = parse_quantity(a.horizon, Dimension::time);
  if (!a.step.empty()) cfg.step = parse_quantity(a.step, Dimension::time);
  if (!a.target.empty()) cfg.aqm.target_delay = parse_quantity(a.target, Dimension::time);
  if (!a.initial_queue.empty())
    cfg.initial_queue = parse_quantity(a.initial_queue, Dimension::time);
  cfg.aqm.gain = a.gain;
  cfg.aqm.mode = a.aqm == "step" ? AqmMode::step : AqmMode::proportional;
  cfg.classic_window_floor = a.floor;
  cfg.mode = a.no_virtual_marks ? SignalMode::raw_probability : SignalMode::virtual_marks;

  const Trajectory traj =
      a.classic_floor ? simulate_classic_window_floor(cfg) : simulate(cfg);
  const std::string csv = trajectory_csv(cfg.scenario, traj);
  if (a.out.empty()) {
    std::cout << csv;
  } else {
    write_file_atomic(a.out, csv);
  }
  std::string rtts;
  for (const auto& f : traj.verdict.final_state.per_flow)
    rtts += " " + f.id + "_total_rtt=" + format_number(f.total_rtt);
  (a.out.empty() ? std::cerr : std::cout) << verdict_line(traj) << rtts << '\n';
  return traj.verdict.diverged ? kExitInfeasible : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steady-state analysis of Scalable (L4S) congestion controls"};
  app.require_subcommand(1);

  Table1Args t1;
  auto* cmd_t1 = app.add_subcommand("table1", "RTT imbalance cushioned by queuing delay (CSV)");
  cmd_t1->add_option("--r1", t1.r1, "Longer base RTT")->capture_default_str();
  cmd_t1->add_option("--r2", t1.r2, "Shorter base RTT")->capture_default_str();
  cmd_t1->add_option("--q", t1.extra_q, "Extra queuing delay rows (repeatable)");

  FigArgs fa;
  auto* cmd_fig = app.add_subcommand("fig", "Write figure data as CSV and JSON");
  cmd_fig->add_option("--id", fa.ids, "Figure id 1..5, or 'all' (repeatable)")->required();
  cmd_fig->add_option("--out", fa.out, "Output directory")->capture_default_str();
  cmd_fig->add_option("--v0", fa.v0, "Marks per RTT at r0 (figures 4, 5)");
  cmd_fig->add_option("--c0", fa.c0, "Compromise 4 marks per second (figure 3)");
  cmd_fig->add_option("--r0", fa.r0, "Compromise 5 reference RTT");
  cmd_fig->add_option("--segment", fa.segment, "Segment size, e.g. 12kb");
  cmd_fig->add_option("--per-decade", fa.per_decade, "Points per decade (figures 3-5)");
  cmd_fig->add_option("--grid-points", fa.grid_points, "Grid points per axis (figure 1)");

  SolveArgs sa;
  auto* cmd_solve = app.add_subcommand("solve", "Solve the steady-state operating point");
  cmd_solve->add_option("scenario", sa.scenario, "Scenario YAML file")->required();
  cmd_solve->add_option("--tol", sa.tol, "Relative capacity residual")->capture_default_str();
  cmd_solve->add_option("--capacity", sa.capacity, "Override capacity, e.g. 10Gb/s");
  cmd_solve->add_flag("--json", sa.json, "Emit JSON");
  cmd_solve->add_flag("--no-virtual-marks", sa.no_virtual_marks,
                      "Drive Compromise 4/5 with 1/p instead of u");

  SimArgs ma;
  auto* cmd_sim = app.add_subcommand("simulate", "Fluid relaxation toward steady state");
  cmd_sim->add_option("scenario", ma.scenario, "Scenario YAML file")->required();
  cmd_sim->add_option("--capacity", ma.capacity, "Override capacity");
  cmd_sim->add_option("--horizon", ma.horizon, "Simulated time")->capture_default_str();
  cmd_sim->add_option("--step", ma.step, "Euler step (default: min RTT / 10)");
  cmd_sim->add_option("--target", ma.target, "AQM target delay (default 500us)");
  cmd_sim->add_option("--gain", ma.gain, "Proportional AQM gain, 1/s")->capture_default_str();
  cmd_sim->add_option("--aqm", ma.aqm, "proportional or step")
      ->check(CLI::IsMember({"proportional", "step"}))
      ->capture_default_str();
  cmd_sim->add_option("--initial-queue", ma.initial_queue, "Queue delay at t = 0");
  cmd_sim->add_option("--floor", ma.floor, "Classic window floor d (segments)")
      ->capture_default_str();
  cmd_sim->add_flag("--classic-floor", ma.classic_floor,
                    "Single Classic flow whose own queue grows until a window of d fits");
  cmd_sim->add_option("--out", ma.out, "Trajectory CSV path (default: stdout)");
  cmd_sim->add_flag("--no-virtual-marks", ma.no_virtual_marks,
                    "Drive Compromise 4/5 with 1/p instead of u");

  auto* cmd_status = app.add_subcommand("status", "Status of the scaling requirements (CSV)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*cmd_t1) return run_table1(t1);
    if (*cmd_fig) return run_fig(fa);
    if (*cmd_solve) return run_solve(sa);
    if (*cmd_sim) return run_simulate(ma);
    if (*cmd_status) {
      std::cout << status_csv(status_summary());
      return kExitOk;
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return kExitUsage;
}
