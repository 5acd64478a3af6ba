#include "l4scc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "l4scc/error.hpp"

namespace l4scc {

std::vector<QueueCase> default_queue_cases() {
  return {{"Drop Tail", 200e-3}, {"PIE AQM", 15e-3}, {"L4S AQM", 500e-6}};
}

std::vector<ImbalanceRow> table1(double r1, double r2, const std::vector<QueueCase>& cases) {
  if (!(r1 > 0.0) || !(r2 > 0.0)) throw DomainError("base RTTs must be positive");
  std::vector<ImbalanceRow> rows;
  rows.reserve(cases.size());
  for (const auto& c : cases) {
    if (!(c.q >= 0.0)) throw DomainError("queuing delay must be non-negative");
    rows.push_back({c.label, c.q, r1, r2, (r1 + c.q) / (r2 + c.q)});
  }
  return rows;
}

double rate_imbalance_comp5(double ri, double rj, double v0, double r0) {
  return comp5_marks_per_sec(ri, v0, r0) / comp5_marks_per_sec(rj, v0, r0);
}

FigureId figure_id_from_int(int id) {
  if (id < 1 || id > 5) throw DomainError("figure id must be 1..5, got " + std::to_string(id));
  return static_cast<FigureId>(id);
}

namespace {

std::string v0_label(double v0) {
  std::string s = std::to_string(v0);
  s.erase(s.find_last_not_of('0') + 1);
  if (!s.empty() && s.back() == '.') s.pop_back();
  return "v0_" + s;
}

FigureSeries saturation_figure(const FigureParams& params) {
  FigureSeries fig;
  fig.figure_id = FigureId::f1;
  fig.title = "Signal saturation region (rtt < v0 s / x)";
  fig.axes = {{"capacity", "b/s", AxisScale::log},
              {"rtt", "s", AxisScale::log},
              {"saturated", "bool", AxisScale::linear}};
  for (double v0 : params.saturation_v0) {
    const SaturationGrid grid = saturation_region_grid(
        v0, params.segment, params.rate_range, params.rtt_range, params.grid_points);
    Curve curve{v0_label(v0), {}};
    curve.rows.reserve(grid.cells.size());
    for (std::size_t j = 0; j < grid.rtts.size(); ++j)
      for (std::size_t i = 0; i < grid.rates.size(); ++i)
        curve.rows.push_back({grid.rates[i], grid.rtts[j], grid.saturated(i, j) ? 1.0 : 0.0});
    fig.curves.push_back(std::move(curve));
  }
  return fig;
}

FigureSeries unsaturated_signal_figure() {
  FigureSeries fig;
  fig.figure_id = FigureId::f2;
  fig.title = "Unmarked-run signal 1/u against marking probability";
  fig.axes = {{"p", "prob", AxisScale::linear}, {"inv_u", "1/pkt", AxisScale::log}};
  std::vector<double> ps;
  for (int i = 1; i <= 99; ++i) ps.push_back(i / 100.0);
  for (double p : {0.999, 0.9999, 0.99999, 0.999999, 0.9999999}) ps.push_back(p);
  Curve curve{"inv_u", {}};
  for (double p : ps) curve.rows.push_back({p, signal_from_p(p).virtual_mark_rate()});
  fig.curves.push_back(std::move(curve));
  return fig;
}

FigureSeries compromise4_figure(const FigureParams& params) {
  FigureSeries fig;
  fig.figure_id = FigureId::f3;
  fig.title = "Compromise 4: inter-mark vs inter-packet time (window of 1 segment assumed)";
  fig.axes = {{"bit_rate", "b/s", AxisScale::log}, {"time", "s", AxisScale::log}};
  Curve marks{"inter_mark", {}};
  Curve packets{"inter_packet", {}};
  for (double x : log_space_per_decade(params.rate_range, params.per_decade)) {
    const double r = x / params.segment;
    // r = c0 u^2 solved for u.
    const SignalLevel sig = signal_from_u(std::sqrt(r / params.c0));
    marks.rows.push_back({x, 1.0 / (sig.p() * r)});
    packets.rows.push_back({x, 1.0 / r});
  }
  fig.curves.push_back(std::move(marks));
  fig.curves.push_back(std::move(packets));
  return fig;
}

std::vector<double> rtt_axis(const FigureParams& params) {
  std::vector<double> rtts = log_space_per_decade(params.rtt_range, params.per_decade);
  if (params.r0 > params.rtt_range.lo && params.r0 < params.rtt_range.hi &&
      std::find(rtts.begin(), rtts.end(), params.r0) == rtts.end()) {
    rtts.insert(std::lower_bound(rtts.begin(), rtts.end(), params.r0), params.r0);
  }
  return rtts;
}

FigureSeries compromise5_figure(const FigureParams& params, bool per_second) {
  FigureSeries fig;
  fig.figure_id = per_second ? FigureId::f5 : FigureId::f4;
  fig.title = per_second ? "Compromise 5: marks per second against RTT"
                         : "Compromise 5: marks per RTT against RTT";
  fig.axes = {{"rtt", "s", AxisScale::log},
              per_second ? Axis{"marks_per_s", "1/s", AxisScale::log}
                         : Axis{"marks_per_rtt", "marks", AxisScale::log}};
  Curve curve{per_second ? "marks_per_s" : "marks_per_rtt", {}};
  for (double rtt : rtt_axis(params)) {
    const double y = per_second ? comp5_marks_per_sec(rtt, params.v0, params.r0)
                                : comp5_marks_per_rtt(rtt, params.v0, params.r0);
    curve.rows.push_back({rtt, y});
  }
  fig.curves.push_back(std::move(curve));
  return fig;
}

}  // namespace

FigureSeries figure_data(FigureId id, const FigureParams& params) {
  switch (id) {
    case FigureId::f1: return saturation_figure(params);
    case FigureId::f2: return unsaturated_signal_figure();
    case FigureId::f3: return compromise4_figure(params);
    case FigureId::f4: return compromise5_figure(params, false);
    case FigureId::f5: return compromise5_figure(params, true);
  }
  throw DomainError("unknown figure id");
}

StarvationReport starvation_report(const Equilibrium& eq, double tolerable_rate,
                                   double dominance) {
  if (!(tolerable_rate > 0.0) || !(dominance > 0.0))
    throw DomainError("tolerable rate and dominance factor must be positive");
  StarvationReport report{tolerable_rate, dominance, {}, {}};
  const auto& flows = eq.per_flow;
  for (std::size_t i = 0; i < flows.size(); ++i) {
    if (!(flows[i].rate_bits < tolerable_rate)) continue;
    bool thriving_other = false;
    for (std::size_t j = 0; j < flows.size() && !thriving_other; ++j)
      thriving_other = j != i && flows[j].rate_bits > dominance * tolerable_rate;
    if (!thriving_other) continue;
    const bool classic = flows[i].law == LawKind::classic;
    StarvationFlag flag{i, flows[i].id, classic, flows[i].rate_bits};
    (classic ? report.classic_flags : report.scalable_flags).push_back(std::move(flag));
  }
  return report;
}

std::vector<StatusRow> status_summary() {
  return {
      {1, "Scalable congestion signalling", "Good compromise #5 or #4?"},
      {2, "Limited RTT-dependence", "Good compromise #5 or #4?"},
      {3, "Unlimited responsiveness", "To be resolved"},
      {4, "Low relative queuing delay", "Separate scope: AQM requirement"},
      {5, "Unsaturated signalling", "Resolved (unmarked-run signalling)"},
      {6, "Coexistence with Classic TCP", "Resolved (DualQ Coupled AQM)"},
  };
}

}  // namespace l4scc
