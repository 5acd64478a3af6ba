#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "l4scc/control_law.hpp"
#include "l4scc/equilibrium.hpp"
#include "l4scc/numeric.hpp"

namespace l4scc {

struct ImbalanceRow {
  std::string label;
  double q = 0.0;
  double r1 = 0.0;
  double r2 = 0.0;
  double imbalance = 0.0;  // (r1 + q) / (r2 + q)
};

struct QueueCase {
  std::string label;
  double q = 0.0;
};

// Drop tail (200 ms), PIE (15 ms) and L4S (500 us) queuing delays.
std::vector<QueueCase> default_queue_cases();

std::vector<ImbalanceRow> table1(double r1, double r2, const std::vector<QueueCase>& cases);

/// f(ri) / f(rj) for two Compromise 5 flows sharing one signal.
double rate_imbalance_comp5(double ri, double rj, double v0 = defaults::kV0,
                            double r0 = defaults::kR0);

enum class FigureId { f1 = 1, f2, f3, f4, f5 };
enum class AxisScale { linear, log };

struct Axis {
  std::string label;
  std::string unit;
  AxisScale scale = AxisScale::linear;
};

/// One plotted series. Every row has one value per figure axis.
struct Curve {
  std::string name;
  std::vector<std::vector<double>> rows;
};

struct FigureSeries {
  FigureId figure_id = FigureId::f1;
  std::string title;
  std::vector<Axis> axes;
  std::vector<Curve> curves;
};

/// Figure parameters.
struct FigureParams {
  double segment = defaults::kSegmentSize;
  double c0 = defaults::kC0;
  double v0 = defaults::kV0;
  double r0 = defaults::kR0;
  std::vector<double> saturation_v0 = {1.0, 2.0};
  Range rate_range = {1e5, 1e10};    // bits/s, figures 1 and 3
  Range rtt_range = {1e-6, 1.0};     // s, figures 1, 4 and 5
  std::size_t grid_points = 61;      // figure 1, per axis
  std::size_t per_decade = 20;       // figures 3 to 5
};

FigureId figure_id_from_int(int id);
FigureSeries figure_data(FigureId id, const FigureParams& params = {});

struct StarvationFlag {
  std::size_t index = 0;
  std::string id;
  bool classic = false;
  double rate_bits = 0.0;
};

struct StarvationReport {
  double tolerable_rate = 0.0;
  double dominance = 0.0;
  std::vector<StarvationFlag> classic_flags;
  std::vector<StarvationFlag> scalable_flags;

  bool any() const noexcept { return !classic_flags.empty() || !scalable_flags.empty(); }
};

/// Flags every flow below `tolerable_rate` while some other flow exceeds
/// dominance * tolerable_rate.
StarvationReport starvation_report(const Equilibrium& eq, double tolerable_rate,
                                   double dominance = 10.0);

struct StatusRow {
  int index = 0;
  std::string requirement;
  std::string status;
};

/// Steady-state scaling requirements and how far each is resolved.
std::vector<StatusRow> status_summary();

}  // namespace l4scc
