#include "l4scc/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <system_error>

#include "l4scc/error.hpp"

namespace l4scc {

namespace {

using nlohmann::json;

std::string scale_name(AxisScale s) { return s == AxisScale::log ? "log" : "linear"; }

// Finite doubles as JSON numbers, non-finite ones as null.
json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json signal_json(const SignalLevel& s) {
  json j;
  j["p"] = s.p();
  j["u"] = s.unbounded() ? json(nullptr) : number(s.u());
  return j;
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string table1_csv(const std::vector<ImbalanceRow>& rows) {
  std::ostringstream out;
  out << "label,q[s],r1[s],r2[s],imbalance\n";
  for (const auto& r : rows)
    out << r.label << ',' << format_number(r.q) << ',' << format_number(r.r1) << ','
        << format_number(r.r2) << ',' << format_number(r.imbalance) << '\n';
  return out.str();
}

std::string status_csv(const std::vector<StatusRow>& rows) {
  std::ostringstream out;
  out << "index,requirement,status\n";
  for (const auto& r : rows) out << r.index << ',' << r.requirement << ",\"" << r.status << "\"\n";
  return out.str();
}

std::string curve_file_stem(const FigureSeries& fig, const Curve& curve) {
  return "fig" + std::to_string(static_cast<int>(fig.figure_id)) + "_" + curve.name;
}

std::string curve_csv(const FigureSeries& fig, const Curve& curve) {
  std::ostringstream out;
  for (std::size_t a = 0; a < fig.axes.size(); ++a)
    out << (a ? "," : "") << fig.axes[a].label << '[' << fig.axes[a].unit << ']';
  out << '\n';
  for (const auto& row : curve.rows) {
    for (std::size_t a = 0; a < row.size(); ++a) out << (a ? "," : "") << format_number(row[a]);
    out << '\n';
  }
  return out.str();
}

std::string figure_json(const FigureSeries& fig) {
  json j;
  j["figure_id"] = "F" + std::to_string(static_cast<int>(fig.figure_id));
  j["title"] = fig.title;
  j["axes"] = json::array();
  for (const auto& a : fig.axes)
    j["axes"].push_back({{"label", a.label}, {"unit", a.unit}, {"scale", scale_name(a.scale)}});
  j["series"] = json::array();
  for (const auto& c : fig.curves) {
    json pts = json::array();
    for (const auto& row : c.rows) {
      json r = json::array();
      for (double v : row) r.push_back(number(v));
      pts.push_back(std::move(r));
    }
    j["series"].push_back({{"name", c.name}, {"points", std::move(pts)}});
  }
  return j.dump(1) + "\n";
}

std::string equilibrium_json(const Scenario& scn, const Equilibrium& eq) {
  json j;
  j["capacity_bps"] = scn.capacity;
  j["feasible"] = eq.feasible;
  j["utilization"] = number(eq.utilization);
  j["iterations"] = eq.iterations;
  j["signal"] = signal_json(eq.signal);
  j["signal_classic"] = eq.signal_classic ? signal_json(*eq.signal_classic) : json(nullptr);
  j["flows"] = json::array();
  for (std::size_t i = 0; i < eq.per_flow.size(); ++i) {
    const FlowState& f = eq.per_flow[i];
    json jf;
    jf["id"] = f.id;
    jf["law"] = std::string(law_name(f.law));
    jf["rate_pps"] = number(f.rate_pkts);
    jf["rate_bps"] = number(f.rate_bits);
    jf["window"] = number(f.window);
    jf["total_rtt_s"] = f.total_rtt;
    jf["marks_per_rtt"] = number(f.marks_per_rtt);
    jf["saturated"] = f.saturated;
    // Against the flow's share of capacity, which is below its demand when
    // the queue is infeasible.
    const double share = eq.utilization > 1.0 ? f.rate_bits / eq.utilization : f.rate_bits;
    if (const auto* d = std::get_if<DctcpLike>(&scn.flows.at(i).law); d && share > 0.0)
      jf["saturation_rtt_bound_s"] =
          number(saturation_rtt_bound(d->v0, scn.flows[i].segment_size, share));
    j["flows"].push_back(std::move(jf));
  }
  return j.dump(1) + "\n";
}

std::string equilibrium_text(const Scenario& scn, const Equilibrium& eq) {
  std::ostringstream out;
  out << "capacity_bps " << format_number(scn.capacity) << '\n';
  out << "feasible " << (eq.feasible ? "yes" : "no") << '\n';
  out << "p " << format_number(eq.signal.p()) << '\n';
  out << "u " << (eq.signal.unbounded() ? "unbounded" : format_number(eq.signal.u())) << '\n';
  if (eq.signal_classic) out << "p_C " << format_number(eq.signal_classic->p()) << '\n';
  out << "utilization " << format_number(eq.utilization) << '\n';
  out << "id,law,rate_bps,rate_pps,window,total_rtt_s,marks_per_rtt,saturated\n";
  for (const auto& f : eq.per_flow)
    out << f.id << ',' << law_name(f.law) << ',' << format_number(f.rate_bits) << ','
        << format_number(f.rate_pkts) << ',' << format_number(f.window) << ','
        << format_number(f.total_rtt) << ',' << format_number(f.marks_per_rtt) << ','
        << (f.saturated ? 1 : 0) << '\n';
  return out.str();
}

std::string trajectory_csv(const Scenario& scn, const Trajectory& traj) {
  std::ostringstream out;
  out << "t[s],q[s],p";
  for (const auto& f : scn.flows) out << ',' << f.id << "_rate[b/s]," << f.id << "_window[pkt]";
  out << '\n';
  for (const auto& s : traj.samples) {
    out << format_number(s.t) << ',' << format_number(s.q) << ',' << format_number(s.p);
    for (std::size_t i = 0; i < s.rate_bits.size(); ++i)
      out << ',' << format_number(s.rate_bits[i]) << ',' << format_number(s.window[i]);
    out << '\n';
  }
  return out.str();
}

std::string verdict_line(const Trajectory& traj) {
  const SimVerdict& v = traj.verdict;
  const TrajectorySample& last = traj.final_sample();
  std::ostringstream out;
  out << "verdict " << (v.diverged ? "diverged" : v.converged ? "converged" : "not-converged")
      << " settled=" << (v.settled ? "yes" : "no") << " t=" << format_number(last.t)
      << " q=" << format_number(last.q) << " p=" << format_number(last.p);
  if (v.compared)
    out << " solver_match_pct=" << format_number(100.0 * v.max_rate_error);
  else
    out << " solver_match_pct=n/a";
  return out.str();
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << contents;
    if (!out.flush()) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace l4scc
