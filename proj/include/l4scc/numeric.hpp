#pragma once

#include <cstddef>
#include <vector>

namespace l4scc {

struct Range {
  double lo = 0.0;
  double hi = 0.0;
};

// n >= 2 log-spaced points from lo to hi inclusive; both ends exact.
std::vector<double> log_space(Range range, std::size_t n);

// Log-spaced points with a fixed density per decade; both ends exact.
std::vector<double> log_space_per_decade(Range range, std::size_t per_decade);

}  // namespace l4scc
