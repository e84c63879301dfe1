// SPDX-License-Identifier: Apache-2.0
//
// Run configuration: an INI file with fixed sections. Angles are degrees in
// the file and radians everywhere else.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rimnull/farfield.hpp"
#include "rimnull/geometry.hpp"
#include "rimnull/ims.hpp"
#include "rimnull/scattering.hpp"

namespace rimnull {

struct NullConfig {
    Direction direction;
    std::vector<SwitchState> states{SwitchState::off, SwitchState::on};
};

struct PatternConfig {
    std::optional<double> phi;      ///< cut azimuth; defaults to the null azimuth, else 0
    double theta_min = deg_to_rad(-8.0);
    double theta_max = deg_to_rad(8.0);
    double step = deg_to_rad(0.02);
};

struct SweepConfig {
    std::vector<double> theta_z;    ///< radians
    std::vector<double> phi;        ///< radians
};

struct RunConfig {
    double diameter = 18.0;
    double inner_diameter = 18.0;
    double focal_length = 7.2;
    double frequency = 1.5e9;

    double feed_exponent = 1.14;
    double feed_amplitude = 1.0;
    Polarization polarization = Polarization::y;

    MeshOptions mesh;

    DyadKind dyad_kind = DyadKind::ruc_table2;
    std::string dyad_table;         ///< resolved path, user_table only
    std::uint64_t dyad_table_digest = 0;

    std::optional<NullConfig> null;
    PatternConfig pattern;
    std::optional<double> spillover_taper;
    SweepConfig sweep;

    std::string output_directory = "out";
    int workers = 0;                ///< 0: RIMNULL_WORKERS or hardware concurrency

    DishConfig dish() const;
    DyadSource dyad_source() const;
    /// Configured value, else 0.82 for a solid dish and 0.731 with a rim annulus.
    double eta_s_eta_t() const;
    double cut_azimuth() const;
    int resolved_workers() const;
};

/// Parses and validates. `base_dir` anchors a relative dyad table path.
/// Throws ConfigError naming the offending "section.key".
RunConfig parse_run_config(std::istream& in, const std::string& base_dir = ".");
RunConfig load_run_config(const std::string& path);

/// Every resolved setting as sorted "section.key=value" lines; a user dyad
/// table contributes its file digest.
std::string canonical_form(const RunConfig& cfg);

std::uint64_t fnv1a64(std::string_view bytes);
/// "fnv1a64:" followed by 16 hex digits of the canonical form's digest.
std::string config_hash(const RunConfig& cfg);

std::string_view to_string(Polarization pol);

}  // namespace rimnull
