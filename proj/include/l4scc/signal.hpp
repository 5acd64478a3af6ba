#pragma once

#include <optional>

namespace l4scc {

/// Congestion-signal state at a queue.
///
/// Holds the per-packet marking probability p together with the mean run of
/// unmarked packets between marks, u = 1/p - 1. The two are kept consistent by
/// construction. p = 0 has no finite u; it is represented by an empty u
/// (the unbounded sentinel), never by a large float.
class SignalLevel {
 public:
  /// No marking at all: p = 0, u unbounded.
  SignalLevel() = default;

  double p() const noexcept { return p_; }
  bool unbounded() const noexcept { return !u_.has_value(); }

  /// Unmarked-run length. Throws DomainError on the unbounded sentinel.
  double u() const;
  std::optional<double> u_if_bounded() const noexcept { return u_; }

  /// Non-saturating signal 1/u = p/(1-p): 0 when unmarked, +inf when p = 1.
  double virtual_mark_rate() const noexcept;

  friend bool operator==(const SignalLevel&, const SignalLevel&) = default;

 private:
  SignalLevel(double p, std::optional<double> u) : p_(p), u_(u) {}

  friend SignalLevel signal_from_p(double p);
  friend SignalLevel signal_from_u(double u);

  double p_ = 0.0;
  std::optional<double> u_;
};

/// p in [0, 1]. p = 0 yields the unbounded-u sentinel.
SignalLevel signal_from_p(double p);

/// u >= 0; +inf is accepted as the unbounded sentinel (p = 0).
SignalLevel signal_from_u(double u);

}  // namespace l4scc
