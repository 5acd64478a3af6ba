// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Tolerances are pinned below.

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "l4scc/analysis.hpp"
#include "l4scc/control_law.hpp"
#include "l4scc/equilibrium.hpp"
#include "l4scc/fluidsim.hpp"
#include "l4scc/signal.hpp"
#include "oracles.hpp"

using namespace l4scc;

namespace {

constexpr double kV0 = 2.0;
constexpr double kR0 = 500e-6;
constexpr double kSeg = 12000.0;

constexpr double kTable1Digits = 3;             // significant digits
constexpr double kMarksPerRttTol = 0.005;       // 0.3527 +- 0.5%
constexpr double kLooseTol = 0.05;              // "about" values
constexpr double kAsymptoteTol = 0.001;
constexpr double kInterMarkTol = 0.10;
constexpr double kSaturationRttTol = 0.05;
constexpr double kClosedFormTol = 2e-6;
constexpr double kSimAgreementTol = 0.01;
constexpr double kInvariantSpread = 1e-3;
constexpr double kVariantSpread = 0.10;
constexpr int kRandomScenarios = 100;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  Outcome() { detail.precision(10); }

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

bool within(double got, double want, double rel) { return std::abs(got - want) <= rel * std::abs(want); }

double round_sig(double v, int digits) {
  const double scale = std::pow(10.0, digits - 1 - static_cast<int>(std::floor(std::log10(std::abs(v)))));
  return std::round(v * scale) / scale;
}

std::string shell(const std::string& args, int* code) {
  const std::string cmd = std::string(L4SCC_CLI_PATH) + " " + args + " 2>/dev/null";
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) {
    *code = -1;
    return out;
  }
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int status = pclose(pipe);
  *code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return out;
}

void cushioning_table(Outcome& o) {
  const auto rows = table1(200e-3, 2e-3, default_queue_cases());
  const std::array<double, 3> exact = {1.98, 12.6, 80.2};
  const std::array<long, 3> rounded = {2, 13, 80};
  for (std::size_t i = 0; i < 3; ++i) {
    o.detail << " " << rows[i].label << "=" << rows[i].imbalance;
    o.check(round_sig(rows[i].imbalance, kTable1Digits) == exact[i], rows[i].label + " 3 sig. digits");
    o.check(std::lround(rows[i].imbalance) == rounded[i], rows[i].label + " integer");
  }
}

void signal_anchors(Outcome& o) {
  const double low = signal_from_p(0.01).virtual_mark_rate();
  const double high = signal_from_p(0.9999999).virtual_mark_rate();
  o.detail << " 1/u(0.01)=" << low << " 1/u(0.9999999)=" << high;
  o.check(std::abs(low - 0.0101010101) < 0.5e-8 * 1.0101, "p=0.01 to 8 digits");
  o.check(std::abs(high - 9999999.0) < 0.5, "p=0.9999999 to 7 digits");
}

void comp5_anchors(Outcome& o) {
  const double mpr = comp5_marks_per_rtt(10e-6, kV0, kR0);
  const double mps_near = comp5_marks_per_sec(10e-6, kV0, kR0);
  const double mps_far = comp5_marks_per_sec(130e-3, kV0, kR0);
  const double ratio = rate_imbalance_comp5(10e-6, 130e-3, kV0, kR0);
  o.detail << " marks/RTT(10us)=" << mpr << " marks/s(10us)=" << mps_near
           << " marks/s(130ms)=" << mps_far << " ratio=" << ratio;
  o.check(within(mpr, 0.3527, kMarksPerRttTol), "marks/RTT at 10 us");
  o.check(within(mps_near, 35000.0, kLooseTol), "marks/s at 10 us");
  o.check(within(mps_far, 2800.0, kLooseTol), "marks/s at 130 ms");
  o.check(within(ratio, 12.7, kLooseTol), "rate ratio");
  o.check(std::abs(mpr - oracle::comp5_marks_per_rtt(10e-6, kV0, kR0)) < 1e-12, "log2 oracle");
}

void taylor_asymptote(Outcome& o) {
  const double got = comp5_marks_per_sec(1000.0 * kR0, kV0, kR0);
  const double want = kV0 * std::log(2.0) / kR0;
  o.detail << " marks/s(1000 r0)=" << got << " v0 ln2/r0=" << want;
  o.check(within(got, want, kAsymptoteTol), "within 0.1%");
}

void comp4_inter_mark(Outcome& o) {
  const FigureSeries fig = figure_data(FigureId::f3);
  const auto& marks = fig.curves.at(0).rows;
  const auto it = std::find_if(marks.begin(), marks.end(), [](const auto& r) { return r[0] == 1e9; });
  if (it == marks.end()) {
    o.check(false, "1 Gb/s row present");
    return;
  }
  const std::size_t i = static_cast<std::size_t>(it - marks.begin());
  const double inter_mark = (*it)[1];
  const double inter_packet = fig.curves.at(1).rows.at(i)[1];
  o.detail << " inter-mark=" << inter_mark << "s inter-packet=" << inter_packet
           << "s ratio=" << inter_mark / inter_packet;
  o.check(within(inter_mark / inter_packet, 10.0, kInterMarkTol), "ratio 10 +- 10%");
}

void saturation_bound(Outcome& o) {
  Scenario scn;
  scn.capacity = 2e6;
  scn.flows = {{"dctcp", 1e-3, kSeg, DctcpLike{kV0}}};
  const Equilibrium eq = solve_single_queue(scn);
  o.check(!eq.feasible && eq.any_saturated(), "solver flags saturation");

  SimConfig cfg;
  cfg.scenario = scn;
  cfg.mode = SignalMode::raw_probability;
  cfg.aqm.mode = AqmMode::step;
  cfg.horizon = 5.0;
  const Trajectory traj = simulate(cfg);
  const double rtt = traj.verdict.final_state.per_flow.at(0).total_rtt;
  const double bound = saturation_rtt_bound(kV0, kSeg, 2e6);
  o.detail << " sim RTT=" << rtt << "s bound=" << bound << "s";
  o.check(!traj.verdict.diverged && within(rtt, bound, kSaturationRttTol), "sim RTT within 5%");

  const FigureSeries fig1 = figure_data(FigureId::f1);
  std::size_t cells = 0, mismatches = 0;
  for (std::size_t c = 0; c < fig1.curves.size(); ++c) {
    const double v0 = FigureParams{}.saturation_v0.at(c);
    for (const auto& row : fig1.curves[c].rows) {
      ++cells;
      if ((row[2] == 1.0) != (row[1] < v0 * kSeg / row[0])) ++mismatches;
    }
  }
  o.detail << " grid cells=" << cells << " mismatches=" << mismatches;
  o.check(cells > 0 && mismatches == 0, "grid boundary");
}

void oracle_equivalence(Outcome& o) {
  std::mt19937_64 rng(20240101);
  double worst = 0.0;
  for (int i = 0; i < kRandomScenarios; ++i) {
    const Scenario scn = oracle::random_comp5_scenario(rng);
    const double u = solve_single_queue(scn).signal.u();
    worst = std::max(worst, std::abs(u / oracle::comp5_closed_form_u(scn) - 1.0));
  }
  o.detail << " scenarios=" << kRandomScenarios << " worst rel. error=" << worst;
  o.check(worst <= kClosedFormTol, "closed form within 2e-6");
}

void sim_agreement(Outcome& o) {
  std::mt19937_64 rng(20240101);
  double worst = 0.0;
  int unconverged = 0;
  for (int i = 0; i < kRandomScenarios; ++i) {
    SimConfig cfg;
    cfg.scenario = oracle::random_comp5_scenario(rng);
    const Trajectory traj = simulate(cfg);
    if (!traj.verdict.converged) ++unconverged;
    // Independent check against the solver at the sim's final queue delay.
    Scenario at_q = cfg.scenario;
    at_q.queue_delay = traj.final_sample().q;
    const Equilibrium ref = solve_single_queue(at_q, {1e-9, 200, SignalMode::virtual_marks});
    for (std::size_t k = 0; k < ref.per_flow.size(); ++k)
      worst = std::max(worst, std::abs(traj.final_sample().rate_bits[k] / ref.per_flow[k].rate_bits - 1.0));
  }
  o.detail << " scenarios=" << kRandomScenarios << " unconverged=" << unconverged
           << " worst rel. error=" << worst;
  o.check(unconverged == 0, "all converged");
  o.check(worst <= kSimAgreementTol, "rates within 1%");
}

std::vector<double> coexistence_ratios(const ControlLaw& law, int exponent, const std::vector<double>& caps) {
  std::vector<double> out;
  for (double x : caps) {
    Scenario scn;
    scn.capacity = x;
    scn.coupling = {2.0, exponent};
    scn.flows = {{"scalable", 19.5e-3, kSeg, law}, {"classic", 5e-3, kSeg, ClassicTcp{}}};
    const Equilibrium eq = solve_dualq(scn);
    out.push_back(eq.per_flow[0].rate_pkts / eq.per_flow[1].rate_pkts);
  }
  return out;
}

void coexistence(Outcome& o) {
  const std::vector<double> common = {1e8, 1e9, 1e10};
  // Compromise 4 at 1e14..1e16 b/s marks lightly enough (p < 4e-4) for the
  // (1 - p)^2 residual of exponent-4 coupling to vanish.
  const std::vector<double> light = {1e14, 1e15, 1e16};
  const double dctcp2 = oracle::relative_spread(coexistence_ratios(DctcpLike{kV0}, 2, common));
  const double comp4_2 = oracle::relative_spread(coexistence_ratios(Compromise4{1000.0}, 2, common));
  const double comp4_2_light = oracle::relative_spread(coexistence_ratios(Compromise4{1000.0}, 2, light));
  const double comp4_4_light = oracle::relative_spread(coexistence_ratios(Compromise4{1000.0}, 4, light));
  const double comp4_4 = oracle::relative_spread(coexistence_ratios(Compromise4{1000.0}, 4, common));
  o.detail << " spread dctcp/e2=" << dctcp2 << " comp4/e2=" << comp4_2
           << " comp4/e2(light)=" << comp4_2_light << " comp4/e4(light)=" << comp4_4_light
           << " comp4/e4(100M-10G, info)=" << comp4_4;
  o.check(dctcp2 < kInvariantSpread, "dctcp exponent 2 invariant");
  o.check(comp4_2 > kVariantSpread && comp4_2_light > kVariantSpread, "comp4 exponent 2 varies");
  o.check(comp4_4_light < kInvariantSpread, "comp4 exponent 4 invariant");
}

void property_suites(Outcome& o) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> unit(1e-9, 1.0 - 1e-9);
  double worst_round_trip = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double p = unit(rng);
    const double back = signal_from_u(signal_from_p(p).u()).p();
    worst_round_trip = std::max(worst_round_trip, std::abs(back - p) / p);
  }
  o.check(worst_round_trip < 1e-12, "p<->u round trip");

  bool monotone = true;
  double prev_rtt_marks = 0.0, prev_sec_marks = 1e300;
  for (double rtt : log_space({1e-7, 10.0}, 2000)) {
    const double per_rtt = comp5_marks_per_rtt(rtt, kV0, kR0);
    const double per_sec = comp5_marks_per_sec(rtt, kV0, kR0);
    monotone = monotone && per_rtt > prev_rtt_marks && per_sec < prev_sec_marks;
    prev_rtt_marks = per_rtt;
    prev_sec_marks = per_sec;
  }
  o.check(monotone, "comp5 monotone in RTT");

  bool rtt_free = true;
  for (double p : {1e-4, 0.01, 0.3, 0.9})
    for (double rtt : {1e-6, 1e-3, 0.2})
      rtt_free = rtt_free && packet_rate(Compromise4{1000.0}, signal_from_p(p), rtt, SignalMode::virtual_marks) ==
                                 packet_rate(Compromise4{1000.0}, signal_from_p(p), 1e-3, SignalMode::virtual_marks);
  o.check(rtt_free, "comp4 RTT independence");

  const std::string scn_dir = L4SCC_SCENARIO_DIR;
  bool deterministic = true;
  for (const std::string args : {std::string("table1"), std::string("status"), std::string("fig --id 5 --out /dev/null"),
                                 "solve --json " + scn_dir + "/dctcp_vs_classic.yaml",
                                 "simulate " + scn_dir + "/comp5_pair.yaml --horizon 20ms"}) {
    int c1 = 0, c2 = 0;
    const std::string a = shell(args, &c1);
    const std::string b = shell(args, &c2);
    deterministic = deterministic && c1 == c2 && a == b && (c1 == 0 || args.rfind("fig", 0) == 0);
  }
  o.check(deterministic, "CLI byte-identical across runs");
  o.detail << " round-trip worst=" << worst_round_trip << " monotone=" << monotone
           << " comp4-rtt-free=" << rtt_free << " cli-deterministic=" << deterministic;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
      {"Queue cushioning table", cushioning_table},
      {"Unsaturated signal anchors", signal_anchors},
      {"Compromise 5 anchors", comp5_anchors},
      {"Taylor asymptote", taylor_asymptote},
      {"Compromise 4 inter-mark ratio", comp4_inter_mark},
      {"Saturation bound", saturation_bound},
      {"Oracle equivalence", oracle_equivalence},
      {"Solver-simulator agreement", sim_agreement},
      {"Coexistence property", coexistence},
      {"Property suites", property_suites},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.check(false, std::string("exception: ") + e.what());
    }
    if (!o.pass) ++failures;
    std::printf("%s %2zu %s:%s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.str().c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
