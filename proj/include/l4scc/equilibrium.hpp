#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "l4scc/control_law.hpp"
#include "l4scc/numeric.hpp"
#include "l4scc/signal.hpp"

namespace l4scc {

struct Coupling {
  double k = defaults::kCouplingK;
  int exponent = defaults::kCouplingExponent;
  friend bool operator==(const Coupling&, const Coupling&) = default;
};

/// N flows at one bottleneck of capacity X.
///
/// Scalable flows share the L4S queue delay; Classic flows (DualQ only) see the
/// Classic queue delay instead.
struct Scenario {
  double capacity = 0.0;  // bits/s
  std::vector<FlowSpec> flows;
  double queue_delay = defaults::kL4sQueueDelay;
  double classic_queue_delay = defaults::kClassicQueueDelay;
  Coupling coupling;

  // Throws DomainError. An empty flow list is only accepted when allow_empty.
  void validate(bool allow_empty = false) const;
  bool has_classic() const noexcept;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

struct SolverConfig {
  double tol = 1e-6;  // relative residual on capacity
  int max_iter = 200;
  SignalMode mode = SignalMode::virtual_marks;
};

struct Equilibrium {
  SignalLevel signal;                         // L4S queue
  std::optional<SignalLevel> signal_classic;  // present for DualQ scenarios
  std::vector<FlowState> per_flow;            // same order as Scenario::flows
  double utilization = 0.0;                   // sum x_i / X
  // False when demand exceeds capacity even at p = 1; the queue must then grow.
  bool feasible = true;
  int iterations = 0;

  bool any_saturated() const noexcept;
};

/// Fixed point of the shared signal for Scalable flows at one queue.
///
/// Bisects on u over [0, u_hi] with geometric bracket expansion. Throws
/// WrongSolverError if a Classic flow is present, InfeasibleError if no
/// bracket is found within max_iter expansions.
Equilibrium solve_single_queue(const Scenario& scn, const SolverConfig& cfg = {});

/// Same fixed point with Classic flows coupled through p_C = (p/k)^exponent.
/// With no Classic flows the result is identical to solve_single_queue.
Equilibrium solve_dualq(const Scenario& scn, const SolverConfig& cfg = {});

/// Minimum total RTT v0 s / x below which p saturates at 1.
double saturation_rtt_bound(double v0, double segment, double rate_bits);

struct SaturationGrid {
  double v0 = 0.0;
  double segment = 0.0;
  std::vector<double> rates;  // bits/s
  std::vector<double> rtts;   // s
  // Row-major [rtt index][rate index]; 1 when rtt < v0 s / x.
  std::vector<std::uint8_t> cells;

  bool saturated(std::size_t rate_index, std::size_t rtt_index) const {
    return cells.at(rtt_index * rates.size() + rate_index) != 0;
  }
};

SaturationGrid saturation_region_grid(double v0, double segment, Range rate_range,
                                      Range rtt_range, std::size_t points);

}  // namespace l4scc
