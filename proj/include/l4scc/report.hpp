#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "l4scc/analysis.hpp"
#include "l4scc/equilibrium.hpp"
#include "l4scc/fluidsim.hpp"

namespace l4scc {

// CSV/JSON renderings. Numbers use '.' decimals and at most 9 significant
// digits; nothing time-dependent is ever emitted.

std::string format_number(double v);

std::string table1_csv(const std::vector<ImbalanceRow>& rows);
std::string status_csv(const std::vector<StatusRow>& rows);

std::string curve_csv(const FigureSeries& fig, const Curve& curve);
std::string figure_json(const FigureSeries& fig);
std::string curve_file_stem(const FigureSeries& fig, const Curve& curve);

std::string equilibrium_json(const Scenario& scn, const Equilibrium& eq);
std::string equilibrium_text(const Scenario& scn, const Equilibrium& eq);

std::string trajectory_csv(const Scenario& scn, const Trajectory& traj);
std::string verdict_line(const Trajectory& traj);

/// Writes via a sibling temporary file and a rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace l4scc
