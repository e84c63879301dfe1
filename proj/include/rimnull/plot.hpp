// SPDX-License-Identifier: Apache-2.0
//
// SVG figures rendered only from result CSVs, so any plot can be regenerated
// from the files alone.
#pragma once

#include <string>

#include "rimnull/csv_io.hpp"

namespace rimnull {

/// Rectangular D_co / D_cr in dB against theta_z for a pattern-cut CSV. An
/// optional reference cut (e.g. the unmodified dish) is overlaid in grey.
std::string pattern_svg(const CsvTable& pattern, const CsvTable* reference = nullptr);

/// Polar map of a switch-map CSV: one annular sector per cell, rings drawn
/// innermost at the centre, x_g to the right and y_g up.
std::string state_map_svg(const CsvTable& switch_map);

void write_text_file(const std::string& path, const std::string& contents);

}  // namespace rimnull
