#include "l4scc/equilibrium.hpp"

#include <cmath>
#include <string>

#include "l4scc/error.hpp"

namespace l4scc {

void Scenario::validate(bool allow_empty) const {
  if (!(capacity > 0.0) || !std::isfinite(capacity))
    throw DomainError("capacity must be positive");
  if (flows.empty() && !allow_empty) throw DomainError("scenario needs at least one flow");
  if (!(queue_delay >= 0.0) || !(classic_queue_delay >= 0.0))
    throw DomainError("queue delays must be non-negative");
  if (!(coupling.k > 0.0)) throw DomainError("coupling factor k must be positive");
  if (coupling.exponent != 2 && coupling.exponent != 4)
    throw DomainError("coupling exponent must be 2 or 4");
  for (const auto& f : flows) f.validate();
}

bool Scenario::has_classic() const noexcept {
  for (const auto& f : flows)
    if (!is_scalable(f.law)) return true;
  return false;
}

bool Equilibrium::any_saturated() const noexcept {
  for (const auto& f : per_flow)
    if (f.saturated) return true;
  return false;
}

namespace {

double total_rtt(const Scenario& scn, const FlowSpec& flow) {
  return flow.base_rtt + (is_scalable(flow.law) ? scn.queue_delay : scn.classic_queue_delay);
}

// Aggregate offered load in bits/s at unmarked run u.
double demand_at(const Scenario& scn, double u, SignalMode mode) {
  const SignalLevel sig = signal_from_u(u);
  const SignalLevel classic = couple_classic(sig, scn.coupling.k, scn.coupling.exponent);
  double sum = 0.0;
  for (const auto& flow : scn.flows) {
    const SignalLevel& seen = is_scalable(flow.law) ? sig : classic;
    sum += packet_rate(flow.law, seen, total_rtt(scn, flow), mode) * flow.segment_size;
  }
  return sum;
}

Equilibrium build(const Scenario& scn, double u, bool feasible, int iterations,
                  SignalMode mode) {
  Equilibrium eq;
  eq.signal = signal_from_u(u);
  eq.feasible = feasible;
  eq.iterations = iterations;
  const SignalLevel classic =
      couple_classic(eq.signal, scn.coupling.k, scn.coupling.exponent);
  if (scn.has_classic()) eq.signal_classic = classic;

  double sum = 0.0;
  eq.per_flow.reserve(scn.flows.size());
  for (const auto& flow : scn.flows) {
    const SignalLevel& seen = is_scalable(flow.law) ? eq.signal : classic;
    const double rtt = total_rtt(scn, flow);
    const double rate = packet_rate(flow.law, seen, rtt, mode);
    FlowState state = make_flow_state(flow, rate, rtt, seen.p());
    state.saturated = demands_saturation(flow.law, seen, mode);
    sum += state.rate_bits;
    eq.per_flow.push_back(std::move(state));
  }
  eq.utilization = sum / scn.capacity;
  return eq;
}

Equilibrium solve(const Scenario& scn, const SolverConfig& cfg) {
  scn.validate();
  if (!(cfg.tol > 0.0) || cfg.max_iter < 1)
    throw DomainError("solver needs tol > 0 and max_iter >= 1");
  const double x = scn.capacity;
  const auto residual = [&](double d) { return std::abs(d - x) / x; };

  // u = 0 is p = 1: the least demand any law mix can offer.
  const double floor_demand = demand_at(scn, 0.0, cfg.mode);
  if (residual(floor_demand) <= cfg.tol) return build(scn, 0.0, true, 0, cfg.mode);
  if (floor_demand > x) return build(scn, 0.0, false, 0, cfg.mode);

  double lo = 0.0;
  double d_lo = floor_demand;
  double hi = 1.0;
  int expansions = 0;
  for (;;) {
    const double d_hi = demand_at(scn, hi, cfg.mode);
    if (!(d_hi > d_lo))
      throw SolverDiagnosticsError("aggregate demand is not strictly increasing in u near u = " +
                                   std::to_string(hi));
    if (residual(d_hi) <= cfg.tol) return build(scn, hi, true, expansions, cfg.mode);
    if (d_hi > x) break;
    lo = hi;
    d_lo = d_hi;
    hi *= 2.0;
    if (++expansions > cfg.max_iter)
      throw InfeasibleError("no bracket for the operating point within max_iter expansions");
  }

  for (int it = 1; it <= cfg.max_iter; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double d = demand_at(scn, mid, cfg.mode);
    if (residual(d) <= cfg.tol || mid == lo || mid == hi)
      return build(scn, mid, true, expansions + it, cfg.mode);
    (d < x ? lo : hi) = mid;
  }
  throw SolverDiagnosticsError("bisection did not reach tolerance within max_iter");
}

}  // namespace

Equilibrium solve_single_queue(const Scenario& scn, const SolverConfig& cfg) {
  if (scn.has_classic())
    throw WrongSolverError("scenario contains Classic flows; use solve_dualq");
  return solve(scn, cfg);
}

Equilibrium solve_dualq(const Scenario& scn, const SolverConfig& cfg) {
  return solve(scn, cfg);
}

double saturation_rtt_bound(double v0, double segment, double rate_bits) {
  if (!(v0 > 0.0) || !(segment > 0.0) || !(rate_bits > 0.0))
    throw DomainError("saturation bound needs positive v0, segment and rate");
  return v0 * segment / rate_bits;
}

SaturationGrid saturation_region_grid(double v0, double segment, Range rate_range,
                                      Range rtt_range, std::size_t points) {
  SaturationGrid grid;
  grid.v0 = v0;
  grid.segment = segment;
  grid.rates = log_space(rate_range, points);
  grid.rtts = log_space(rtt_range, points);
  grid.cells.resize(grid.rates.size() * grid.rtts.size());
  for (std::size_t j = 0; j < grid.rtts.size(); ++j)
    for (std::size_t i = 0; i < grid.rates.size(); ++i)
      grid.cells[j * grid.rates.size() + i] =
          grid.rtts[j] < saturation_rtt_bound(v0, segment, grid.rates[i]) ? 1 : 0;
  return grid;
}

}  // namespace l4scc
