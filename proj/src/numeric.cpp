#include "l4scc/numeric.hpp"

#include <cmath>

#include "l4scc/error.hpp"

namespace l4scc {

namespace {

void check_range(Range range) {
  if (!(range.lo > 0.0) || !(range.hi > range.lo) || !std::isfinite(range.hi))
    throw DomainError("log range must satisfy 0 < lo < hi");
}

}  // namespace

std::vector<double> log_space(Range range, std::size_t n) {
  check_range(range);
  if (n < 2) throw DomainError("log range needs at least 2 points");
  const double a = std::log10(range.lo);
  const double b = std::log10(range.hi);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = std::pow(10.0, a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
  out.front() = range.lo;
  out.back() = range.hi;
  return out;
}

std::vector<double> log_space_per_decade(Range range, std::size_t per_decade) {
  check_range(range);
  if (per_decade < 1) throw DomainError("need at least one point per decade");
  const double decades = std::log10(range.hi / range.lo);
  const auto n = static_cast<std::size_t>(std::ceil(decades * per_decade - 1e-9)) + 1;
  return log_space(range, n < 2 ? 2 : n);
}

}  // namespace l4scc
