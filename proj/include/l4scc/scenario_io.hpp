#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "l4scc/equilibrium.hpp"

namespace l4scc {

/// YAML scenario document:
///
///   capacity: 1Gb/s
///   queue_delay: 500us           # optional
///   classic_queue_delay: 15ms    # optional
///   coupling: {k: 2, exponent: 2}
///   flows:
///     - {id: near, base_rtt: 10us, segment_size: 12kb, law: compromise5,
///        params: {v0: 2, r0: 500us}}
///
/// Unknown keys are rejected. Throws ParseError (wrapping DomainError for
/// invalid values).
Scenario parse_scenario(std::string_view text, bool allow_empty = false);
Scenario load_scenario(const std::filesystem::path& path, bool allow_empty = false);

/// Inverse of parse_scenario; values round-trip exactly.
std::string dump_scenario(const Scenario& scn);

}  // namespace l4scc
