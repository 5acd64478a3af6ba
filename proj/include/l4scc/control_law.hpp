#pragma once

#include <limits>
#include <string>
#include <string_view>
#include <variant>

#include "l4scc/signal.hpp"

namespace l4scc {

// Canonical units throughout: seconds, bits, bits/s, packets/s.
namespace defaults {
inline constexpr double kV0 = 2.0;             // marks per RTT (DCTCP's value)
inline constexpr double kR0 = 500e-6;          // s
inline constexpr double kC0 = 1000.0;          // marks per second
inline constexpr double kCouplingK = 2.0;      // provisional
inline constexpr int kCouplingExponent = 2;
inline constexpr double kSegmentSize = 12000;  // bits
inline constexpr double kL4sQueueDelay = 500e-6;
inline constexpr double kClassicQueueDelay = 15e-3;
}  // namespace defaults

/// Returned by rate laws when the signal gives no finite bound on the rate
/// (p = 0 or u unbounded). Callers decide how to cap it.
inline constexpr double kUnboundedRate = std::numeric_limits<double>::infinity();

/// W = v0 / p, so r = v0 / (R p).
struct DctcpLike {
  double v0 = defaults::kV0;
  friend bool operator==(const DctcpLike&, const DctcpLike&) = default;
};

/// RTT-independent r = c0 u^2.
struct Compromise4 {
  double c0 = defaults::kC0;
  friend bool operator==(const Compromise4&, const Compromise4&) = default;
};

/// r = u f(R) with f(R) = v0 / (R lg(r0/R + 1)).
struct Compromise5 {
  double v0 = defaults::kV0;
  double r0 = defaults::kR0;
  friend bool operator==(const Compromise5&, const Compromise5&) = default;
};

/// Reno steady state r = sqrt(3/2) / (R sqrt(p_C)), driven by the Classic signal.
struct ClassicTcp {
  friend bool operator==(const ClassicTcp&, const ClassicTcp&) = default;
};

using ControlLaw = std::variant<DctcpLike, Compromise4, Compromise5, ClassicTcp>;

enum class LawKind { dctcp, compromise4, compromise5, classic };

LawKind kind_of(const ControlLaw& law) noexcept;
std::string_view law_name(LawKind kind) noexcept;
inline bool is_scalable(const ControlLaw& law) noexcept {
  return kind_of(law) != LawKind::classic;
}

// Throws DomainError on any non-positive parameter.
void validate(const ControlLaw& law);

/// How Scalable laws read the congestion signal.
///
/// virtual_marks: Compromise 4/5 are driven by the unmarked run u (they never
/// saturate). raw_probability: the same laws use 1/p in place of u, so they
/// stop responding once p reaches 1. DCTCP-like always reads p directly.
enum class SignalMode { virtual_marks, raw_probability };

struct FlowSpec {
  std::string id;
  double base_rtt = 0.0;      // s
  double segment_size = 0.0;  // bits
  ControlLaw law;

  void validate() const;
  friend bool operator==(const FlowSpec&, const FlowSpec&) = default;
};

/// One flow at an operating point.
struct FlowState {
  std::string id;
  LawKind law = LawKind::dctcp;
  double rate_pkts = 0.0;      // packets/s
  double rate_bits = 0.0;      // bits/s
  double window = 0.0;         // segments, rate_pkts * total_rtt
  double total_rtt = 0.0;      // base RTT plus queuing delay
  double marks_per_rtt = 0.0;  // p * window, with p of the queue the flow sees
  bool saturated = false;
};

FlowState make_flow_state(const FlowSpec& flow, double rate_pkts, double total_rtt,
                          double p);

/// Segments in flight for a bit rate and RTT: x R / s.
double window_for(double rate_bits, double rtt, double segment);

double rate_dctcp(const SignalLevel& sig, double rtt, double v0);
double rate_comp4(const SignalLevel& sig, double c0);

/// v0 / lg(r0/rtt + 1), lg = log2.
double comp5_marks_per_rtt(double rtt, double v0, double r0);

/// f(rtt) = v0 / (rtt lg(r0/rtt + 1)).
double comp5_marks_per_sec(double rtt, double v0, double r0);

double rate_comp5(const SignalLevel& sig, double rtt, double v0, double r0);
double rate_classic(const SignalLevel& sig_classic, double rtt);

/// p_C = min(1, (p/k)^exponent), exponent in {2, 4}.
SignalLevel couple_classic(const SignalLevel& sig_l4s, double k, int exponent);

/// Packet rate of any law. For ClassicTcp `sig` must already be the Classic
/// signal p_C.
double packet_rate(const ControlLaw& law, const SignalLevel& sig, double rtt,
                   SignalMode mode = SignalMode::virtual_marks);

/// True when the law, read without the virtual-mark transform, asks for a
/// signal above p = 1 at this operating point.
bool demands_saturation(const ControlLaw& law, const SignalLevel& sig,
                        SignalMode mode = SignalMode::virtual_marks);

}  // namespace l4scc
