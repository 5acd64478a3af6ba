#include "l4scc/fluidsim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "l4scc/error.hpp"

namespace l4scc {

double AqmConfig::marking(double queue_delay) const noexcept {
  if (mode == AqmMode::step) return queue_delay > target_delay ? 1.0 : 0.0;
  return std::clamp(gain * (queue_delay - target_delay), 0.0, 1.0);
}

void SimConfig::validate() const {
  scenario.validate(/*allow_empty=*/true);
  if (!(step >= 0.0)) throw DomainError("step must be positive (or 0 for automatic)");
  if (!(aqm.target_delay >= 0.0)) throw DomainError("AQM target delay must be non-negative");
  if (aqm.mode == AqmMode::proportional && !(aqm.gain > 0.0))
    throw DomainError("AQM gain must be positive");
  if (!(classic_window_floor >= 1.0)) throw DomainError("window floor d must be >= 1");
  if (!(rate_cap_factor > 0.0)) throw DomainError("rate cap factor must be positive");
  if (!(initial_queue >= 0.0)) throw DomainError("initial queue must be non-negative");
  if (max_samples < 2) throw DomainError("need at least 2 samples");
  if (!(horizon >= 10.0 * effective_step()))
    throw DomainError("horizon must cover at least 10 steps");
}

double SimConfig::effective_step() const {
  if (step > 0.0) return step;
  double min_rtt = std::numeric_limits<double>::infinity();
  for (const auto& f : scenario.flows) {
    const double q = is_scalable(f.law) ? aqm.target_delay : scenario.classic_queue_delay;
    min_rtt = std::min(min_rtt, f.base_rtt + q);
  }
  if (!std::isfinite(min_rtt) || !(min_rtt > 0.0)) return horizon / 1000.0;
  return min_rtt / 10.0;
}

namespace {

struct StepRates {
  std::vector<double> rate_bits;
  std::vector<double> window;
  std::vector<FlowState> states;
};

// Fills rates for queue delay q and marking p.
using RateModel = void (*)(const SimConfig&, double q, double p, StepRates& out);

double capped_bits(const SimConfig& cfg, double rate_pkts, double segment) {
  const double cap = cfg.rate_cap_factor * cfg.scenario.capacity;
  return std::min(rate_pkts * segment, cap);
}

void shared_queue_rates(const SimConfig& cfg, double q, double p, StepRates& out) {
  const Scenario& scn = cfg.scenario;
  const SignalLevel sig = signal_from_p(p);
  const SignalLevel classic = couple_classic(sig, scn.coupling.k, scn.coupling.exponent);
  out.states.clear();
  for (std::size_t i = 0; i < scn.flows.size(); ++i) {
    const FlowSpec& flow = scn.flows[i];
    const bool scalable = is_scalable(flow.law);
    const SignalLevel& seen = scalable ? sig : classic;
    const double rtt = flow.base_rtt + (scalable ? q : scn.classic_queue_delay);
    double pkts = packet_rate(flow.law, seen, rtt, cfg.mode);
    if (!scalable) pkts = std::max(pkts, cfg.classic_window_floor / rtt);
    const double bits = capped_bits(cfg, pkts, flow.segment_size);
    out.rate_bits[i] = bits;
    out.window[i] = bits / flow.segment_size * rtt;
    FlowState state = make_flow_state(flow, bits / flow.segment_size, rtt, seen.p());
    state.saturated = demands_saturation(flow.law, seen, cfg.mode);
    out.states.push_back(std::move(state));
  }
}

void window_floor_rates(const SimConfig& cfg, double q, double p, StepRates& out) {
  const FlowSpec& flow = cfg.scenario.flows.front();
  const SignalLevel sig = signal_from_p(p);
  const double rtt = flow.base_rtt + q;
  const double pkts = std::max(rate_classic(sig, rtt), cfg.classic_window_floor / rtt);
  const double bits = capped_bits(cfg, pkts, flow.segment_size);
  out.rate_bits[0] = bits;
  out.window[0] = bits / flow.segment_size * rtt;
  FlowState state = make_flow_state(flow, bits / flow.segment_size, rtt, p);
  state.saturated = p >= 1.0;
  out.states.assign(1, std::move(state));
}

TrajectorySample make_sample(double t, double q, double p, const StepRates& r) {
  return TrajectorySample{t, q, p, r.rate_bits, r.window};
}

Trajectory relax(const SimConfig& cfg, RateModel model, bool classic_own_queue) {
  const Scenario& scn = cfg.scenario;
  const double x = scn.capacity;
  const double step = cfg.effective_step();
  const auto total_steps = static_cast<std::size_t>(std::ceil(cfg.horizon / step));
  const std::size_t stride = std::max<std::size_t>(1, total_steps / cfg.max_samples);

  Trajectory traj;
  StepRates rates;
  rates.rate_bits.assign(scn.flows.size(), 0.0);
  rates.window.assign(scn.flows.size(), 0.0);

  double q = cfg.initial_queue;
  double t = 0.0;
  double p = 0.0;
  for (std::size_t n = 0;; ++n) {
    p = cfg.aqm.marking(q);
    model(cfg, q, p, rates);
    double demand = 0.0;
    for (double b : rates.rate_bits) demand += b;

    if (n % stride == 0) traj.samples.push_back(make_sample(t, q, p, rates));
    if (n >= total_steps) break;

    const double next = std::max(0.0, q + step * (demand - x) / x);
    const double change = std::abs(next - q);
    // With a small step |dq| can be tiny while demand is still far from X, so
    // the queue must also have stopped drifting (or sit empty and underloaded).
    const bool still = next == 0.0 ? demand <= x : std::abs(demand - x) / x < kSettleDrift;
    q = next;
    t = static_cast<double>(n + 1) * step;
    if (q > kDivergenceQueue) {
      traj.verdict.diverged = true;
      p = cfg.aqm.marking(q);
      model(cfg, q, p, rates);
      break;
    }
    if (change < kSettleThreshold && still) {
      traj.verdict.settled = true;
      p = cfg.aqm.marking(q);
      model(cfg, q, p, rates);
      break;
    }
  }
  if (traj.samples.empty() || traj.samples.back().t != t)
    traj.samples.push_back(make_sample(t, q, p, rates));

  SimVerdict& v = traj.verdict;
  Equilibrium& fin = v.final_state;
  fin.signal = signal_from_p(p);
  if (classic_own_queue) {
    fin.signal_classic = fin.signal;
  } else if (scn.has_classic()) {
    fin.signal_classic = couple_classic(fin.signal, scn.coupling.k, scn.coupling.exponent);
  }
  fin.per_flow = rates.states;
  double sum = 0.0;
  for (double b : rates.rate_bits) sum += b;
  fin.utilization = sum / x;
  fin.feasible = !v.diverged;
  return traj;
}

}  // namespace

Trajectory simulate(const SimConfig& cfg) {
  cfg.validate();
  Trajectory traj = relax(cfg, &shared_queue_rates, false);
  SimVerdict& v = traj.verdict;
  if (cfg.scenario.flows.empty()) {
    v.converged = v.settled && !v.diverged;
    return traj;
  }

  // Reference: the solver at the queue delay the relaxation settled on.
  Scenario at_final = cfg.scenario;
  at_final.queue_delay = traj.final_sample().q;
  try {
    const SolverConfig scfg{.tol = 1e-9, .max_iter = 200, .mode = cfg.mode};
    Equilibrium ref = at_final.has_classic() ? solve_dualq(at_final, scfg)
                                             : solve_single_queue(at_final, scfg);
    double worst = 0.0;
    for (std::size_t i = 0; i < ref.per_flow.size(); ++i) {
      const double want = ref.per_flow[i].rate_bits;
      const double got = traj.final_sample().rate_bits[i];
      worst = std::max(worst, std::abs(got - want) / want);
    }
    v.compared = true;
    v.max_rate_error = worst;
    v.converged = !v.diverged && worst <= kAgreementTolerance;
    v.reference = std::move(ref);
  } catch (const std::exception&) {
    v.compared = false;
    v.converged = false;
  }
  return traj;
}

Trajectory simulate_classic_window_floor(const SimConfig& cfg) {
  cfg.validate();
  const auto& flows = cfg.scenario.flows;
  if (flows.size() != 1 || is_scalable(flows.front().law))
    throw DomainError("window-floor simulation takes exactly one Classic flow");
  SimConfig own = cfg;
  if (own.step == 0.0) own.step = (flows.front().base_rtt + cfg.aqm.target_delay) / 10.0;
  own.validate();
  Trajectory traj = relax(own, &window_floor_rates, true);
  traj.verdict.converged = traj.verdict.settled && !traj.verdict.diverged;
  return traj;
}

}  // namespace l4scc
