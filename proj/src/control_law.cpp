#include "l4scc/control_law.hpp"

#include <cmath>
#include <string>

#include "l4scc/error.hpp"

namespace l4scc {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw DomainError(std::string(what) + " must be positive and finite");
}

// Scalable-law signal after the mode is applied: u itself, or 1/p when the
// virtual-mark transform is disabled. Empty when the signal is unmarked.
std::optional<double> effective_run(const SignalLevel& sig, SignalMode mode) {
  if (mode == SignalMode::virtual_marks) return sig.u_if_bounded();
  if (sig.p() == 0.0) return std::nullopt;
  return 1.0 / sig.p();
}

}  // namespace

LawKind kind_of(const ControlLaw& law) noexcept {
  return std::visit(Overloaded{
                        [](const DctcpLike&) { return LawKind::dctcp; },
                        [](const Compromise4&) { return LawKind::compromise4; },
                        [](const Compromise5&) { return LawKind::compromise5; },
                        [](const ClassicTcp&) { return LawKind::classic; },
                    },
                    law);
}

std::string_view law_name(LawKind kind) noexcept {
  switch (kind) {
    case LawKind::dctcp: return "dctcp";
    case LawKind::compromise4: return "compromise4";
    case LawKind::compromise5: return "compromise5";
    case LawKind::classic: return "classic";
  }
  return "unknown";
}

void validate(const ControlLaw& law) {
  std::visit(Overloaded{
                 [](const DctcpLike& l) { require_positive(l.v0, "v0"); },
                 [](const Compromise4& l) { require_positive(l.c0, "c0"); },
                 [](const Compromise5& l) {
                   require_positive(l.v0, "v0");
                   require_positive(l.r0, "r0");
                 },
                 [](const ClassicTcp&) {},
             },
             law);
}

void FlowSpec::validate() const {
  require_positive(base_rtt, "base_rtt");
  require_positive(segment_size, "segment_size");
  l4scc::validate(law);
}

FlowState make_flow_state(const FlowSpec& flow, double rate_pkts, double total_rtt,
                          double p) {
  FlowState s;
  s.id = flow.id;
  s.law = kind_of(flow.law);
  s.rate_pkts = rate_pkts;
  s.rate_bits = rate_pkts * flow.segment_size;
  s.total_rtt = total_rtt;
  s.window = rate_pkts * total_rtt;
  s.marks_per_rtt = p * s.window;
  return s;
}

double window_for(double rate_bits, double rtt, double segment) {
  require_positive(rate_bits, "rate");
  require_positive(rtt, "rtt");
  require_positive(segment, "segment size");
  return rate_bits * rtt / segment;
}

double rate_dctcp(const SignalLevel& sig, double rtt, double v0) {
  require_positive(rtt, "rtt");
  require_positive(v0, "v0");
  if (sig.p() == 0.0) return kUnboundedRate;
  return v0 / (rtt * sig.p());
}

double rate_comp4(const SignalLevel& sig, double c0) {
  require_positive(c0, "c0");
  if (sig.unbounded()) return kUnboundedRate;
  const double u = sig.u();
  return c0 * u * u;
}

double comp5_marks_per_rtt(double rtt, double v0, double r0) {
  require_positive(rtt, "rtt");
  require_positive(v0, "v0");
  require_positive(r0, "r0");
  // log1p keeps precision when r0/rtt is tiny (the large-RTT asymptote).
  return v0 * std::log(2.0) / std::log1p(r0 / rtt);
}

double comp5_marks_per_sec(double rtt, double v0, double r0) {
  return comp5_marks_per_rtt(rtt, v0, r0) / rtt;
}

double rate_comp5(const SignalLevel& sig, double rtt, double v0, double r0) {
  const double f = comp5_marks_per_sec(rtt, v0, r0);
  if (sig.unbounded()) return kUnboundedRate;
  return sig.u() * f;
}

double rate_classic(const SignalLevel& sig_classic, double rtt) {
  require_positive(rtt, "rtt");
  if (sig_classic.p() == 0.0) return kUnboundedRate;
  return std::sqrt(1.5) / (rtt * std::sqrt(sig_classic.p()));
}

SignalLevel couple_classic(const SignalLevel& sig_l4s, double k, int exponent) {
  require_positive(k, "coupling factor k");
  if (exponent != 2 && exponent != 4)
    throw DomainError("coupling exponent must be 2 or 4, got " + std::to_string(exponent));
  const double ratio = sig_l4s.p() / k;
  if (ratio >= 1.0) return signal_from_p(1.0);
  double pc = ratio * ratio;
  if (exponent == 4) pc *= pc;
  return signal_from_p(pc);
}

double packet_rate(const ControlLaw& law, const SignalLevel& sig, double rtt,
                   SignalMode mode) {
  return std::visit(
      Overloaded{
          [&](const DctcpLike& l) { return rate_dctcp(sig, rtt, l.v0); },
          [&](const Compromise4& l) {
            if (mode == SignalMode::virtual_marks) return rate_comp4(sig, l.c0);
            require_positive(l.c0, "c0");
            const auto run = effective_run(sig, mode);
            return run ? l.c0 * *run * *run : kUnboundedRate;
          },
          [&](const Compromise5& l) {
            if (mode == SignalMode::virtual_marks) return rate_comp5(sig, rtt, l.v0, l.r0);
            const double f = comp5_marks_per_sec(rtt, l.v0, l.r0);
            const auto run = effective_run(sig, mode);
            return run ? *run * f : kUnboundedRate;
          },
          [&](const ClassicTcp&) { return rate_classic(sig, rtt); },
      },
      law);
}

bool demands_saturation(const ControlLaw& law, const SignalLevel& sig, SignalMode mode) {
  const LawKind kind = kind_of(law);
  const bool reads_u = mode == SignalMode::virtual_marks &&
                       (kind == LawKind::compromise4 || kind == LawKind::compromise5);
  if (reads_u) {
    // Used in place of p, 1/u exceeds 1 exactly when u < 1.
    return !sig.unbounded() && sig.u() < 1.0;
  }
  return sig.p() >= 1.0;
}

}  // namespace l4scc
