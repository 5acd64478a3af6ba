#include "l4scc/signal.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "l4scc/error.hpp"

namespace l4scc {

double SignalLevel::u() const {
  if (!u_) throw DomainError("unmarked-run length is unbounded at p = 0");
  return *u_;
}

double SignalLevel::virtual_mark_rate() const noexcept {
  if (!u_) return 0.0;
  if (*u_ == 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / *u_;
}

SignalLevel signal_from_p(double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw DomainError("marking probability outside [0, 1]: " + std::to_string(p));
  if (p == 0.0) return SignalLevel{};
  // (1 - p) is exact near p = 1, unlike 1/p - 1.
  return SignalLevel{p, (1.0 - p) / p};
}

SignalLevel signal_from_u(double u) {
  if (std::isnan(u) || u < 0.0)
    throw DomainError("unmarked-run length must be non-negative: " + std::to_string(u));
  if (std::isinf(u)) return SignalLevel{};
  return SignalLevel{1.0 / (u + 1.0), u};
}

}  // namespace l4scc
