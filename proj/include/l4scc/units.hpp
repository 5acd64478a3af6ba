#pragma once

#include <string>
#include <string_view>

namespace l4scc {

enum class Dimension { time, size, rate, dimensionless };

/// Parses "10us", "1.5 Gb/s", "12kb" into canonical seconds, bits or bits/s.
/// Suffixes are case-sensitive; a dimensional quantity without a suffix is
/// rejected. Dimensionless quantities must be bare numbers.
double parse_quantity(std::string_view text, Dimension dim);

/// Canonical-unit rendering that parses back to the identical double.
std::string format_quantity(double value, Dimension dim);

}  // namespace l4scc
