#include "l4scc/units.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <string>
#include <utility>

#include "l4scc/error.hpp"

namespace l4scc {

namespace {

struct Suffix {
  std::string_view text;
  Dimension dim;
  double scale;
  bool divide;  // sub-units divide by scale so that e.g. 10us is exactly 1e-5
};

constexpr std::array kSuffixes{
    Suffix{"s", Dimension::time, 1.0, false},
    Suffix{"ms", Dimension::time, 1e3, true},
    Suffix{"us", Dimension::time, 1e6, true},
    Suffix{"\xC2\xB5s", Dimension::time, 1e6, true},  // µs
    Suffix{"ns", Dimension::time, 1e9, true},
    Suffix{"b", Dimension::size, 1.0, false},
    Suffix{"kb", Dimension::size, 1e3, false},
    Suffix{"Mb", Dimension::size, 1e6, false},
    Suffix{"b/s", Dimension::rate, 1.0, false},
    Suffix{"kb/s", Dimension::rate, 1e3, false},
    Suffix{"Mb/s", Dimension::rate, 1e6, false},
    Suffix{"Gb/s", Dimension::rate, 1e9, false},
    Suffix{"Tb/s", Dimension::rate, 1e12, false},
    Suffix{"Pb/s", Dimension::rate, 1e15, false},
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

const char* dimension_name(Dimension dim) {
  switch (dim) {
    case Dimension::time: return "time";
    case Dimension::size: return "size";
    case Dimension::rate: return "rate";
    case Dimension::dimensionless: return "dimensionless";
  }
  return "?";
}

}  // namespace

double parse_quantity(std::string_view text, Dimension dim) {
  const std::string_view s = trim(text);
  double value = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || end == s.data())
    throw ParseError("not a number: '" + std::string(text) + "'");
  if (!std::isfinite(value)) throw ParseError("non-finite quantity: '" + std::string(text) + "'");
  const std::string_view suffix = trim(s.substr(static_cast<std::size_t>(end - s.data())));

  if (dim == Dimension::dimensionless) {
    if (!suffix.empty())
      throw ParseError("unexpected unit '" + std::string(suffix) + "' on dimensionless value");
    return value;
  }
  if (suffix.empty())
    throw ParseError("missing " + std::string(dimension_name(dim)) + " unit on '" +
                     std::string(text) + "'");
  for (const auto& sfx : kSuffixes) {
    if (sfx.text != suffix) continue;
    if (sfx.dim != dim)
      throw ParseError("unit '" + std::string(suffix) + "' is not a " + dimension_name(dim) +
                       " unit");
    return sfx.divide ? value / sfx.scale : value * sfx.scale;
  }
  throw ParseError("unknown unit '" + std::string(suffix) + "'");
}

std::string format_quantity(double value, Dimension dim) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  std::string out(buf);
  switch (dim) {
    case Dimension::time: return out + "s";
    case Dimension::size: return out + "b";
    case Dimension::rate: return out + "b/s";
    case Dimension::dimensionless: return out;
  }
  return out;
}

}  // namespace l4scc
