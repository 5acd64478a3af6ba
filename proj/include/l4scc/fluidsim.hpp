#pragma once

#include <cstddef>
#include <vector>

#include "l4scc/equilibrium.hpp"

namespace l4scc {

enum class AqmMode { proportional, step };

/// Idealized AQM: p = clamp(gain (q - target), 0, 1), or p = 1 above target in
/// step mode.
struct AqmConfig {
  double target_delay = defaults::kL4sQueueDelay;  // s
  double gain = 10.0;                              // 1/s
  AqmMode mode = AqmMode::proportional;

  double marking(double queue_delay) const noexcept;
};

struct SimConfig {
  Scenario scenario;
  AqmConfig aqm;
  double step = 0.0;  // s; 0 selects min(base RTT + target) / 10
  double horizon = 2.0;
  double classic_window_floor = 2.0;  // segments (delayed-ACK factor d)
  SignalMode mode = SignalMode::virtual_marks;
  double initial_queue = 0.0;
  // Per-flow ceiling, as a multiple of capacity, applied when the law gives no
  // finite rate (p = 0).
  double rate_cap_factor = 10.0;
  std::size_t max_samples = 4000;

  void validate() const;
  double effective_step() const;
};

struct TrajectorySample {
  double t = 0.0;
  double q = 0.0;
  double p = 0.0;
  std::vector<double> rate_bits;
  std::vector<double> window;
};

struct SimVerdict {
  bool converged = false;  // rates within 1% of the solver at the final queue
  bool settled = false;    // queue changes fell below 1e-9 s and stopped drifting
  bool diverged = false;   // queue exceeded 10 s
  bool compared = false;   // a solver reference was available
  double max_rate_error = 0.0;  // relative, against the solver
  Equilibrium final_state;
  std::optional<Equilibrium> reference;
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  SimVerdict verdict;

  const TrajectorySample& final_sample() const { return samples.back(); }
};

inline constexpr double kSettleThreshold = 1e-9;    // s
inline constexpr double kSettleDrift = 1e-6;        // |sum x - X| / X
inline constexpr double kDivergenceQueue = 10.0;    // s
inline constexpr double kAgreementTolerance = 0.01;

/// Explicit-Euler relaxation of the shared queue toward steady state.
///
/// The queue integrates excess demand, q' = (sum x_i - X) / X. Each step the
/// AQM maps q to p and every flow re-evaluates its law at R = R0 + q. Classic
/// flows, if any, sit behind the coupled Classic signal at R0 + the Classic
/// queue delay. Only the steady state is meant to be meaningful.
Trajectory simulate(const SimConfig& cfg);

/// A single Classic flow whose window never drops below the delayed-ACK
/// factor d: the queue grows until a window of d fits, R ~ d s / x.
Trajectory simulate_classic_window_floor(const SimConfig& cfg);

}  // namespace l4scc
