// SPDX-License-Identifier: Apache-2.0
//
// CSV result files. Every file opens with a '#' header block carrying the
// code version, config hash and mesh density; angles are degrees.
#pragma once

#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "rimnull/config.hpp"
#include "rimnull/farfield.hpp"
#include "rimnull/nullsteer.hpp"
#include "rimnull/sweep.hpp"

namespace rimnull {

std::string_view code_version();

struct Provenance {
    std::string kind;               ///< file type, e.g. "pattern_cut"
    std::string config_hash;
    double samples_per_wavelength = 0.0;
    int cell_subdivisions = 0;
    std::string dyad_source;

    static Provenance from(const RunConfig& cfg, std::string kind);
};

void write_header(std::ostream& out, const Provenance& p);

/// Parsed CSV: '#' lines become `meta` (first token is the key), the first
/// other line is the column header. Quoted fields follow RFC 4180.
struct CsvTable {
    std::map<std::string, std::string> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    std::size_t column(std::string_view name) const;  ///< throws ConfigError if absent
    double number(std::size_t row, std::string_view name) const;
    const std::string& text(std::size_t row, std::string_view name) const;
};

CsvTable read_csv(std::istream& in);
CsvTable read_csv_file(const std::string& path);

std::string csv_escape(std::string_view field);
/// Shortest round-trip decimal ("%.17g"); inf and nan spelled out.
std::string format_double(double v);

/// theta_z_deg (signed cut offset), phi_deg, D_co_dB, D_cr_dB, E_co_re,
/// E_co_im, E_cr_re, E_cr_im.
void write_pattern_csv(std::ostream& out, const Provenance& p, const FarFieldResult& result, double phi_cut);

/// ring, index_in_ring, theta_p_deg, phi_p_deg, state.
void write_switch_map_csv(std::ostream& out, const Provenance& p, std::span<const UnitCell> cells,
                          std::span<const SwitchState> states);

/// States from a switch map, checked cell by cell against the tessellation.
/// Throws ConfigError on any mismatch.
std::vector<SwitchState> read_switch_map(const CsvTable& table, std::span<const UnitCell> cells);

/// One row per grid point. Streaming: header first, then rows as they arrive.
void write_sweep_header(std::ostream& out, const Provenance& p);
void write_sweep_row(std::ostream& out, const SweepRecord& rec);
void write_timing_header(std::ostream& out, const Provenance& p);
void write_timing_row(std::ostream& out, std::size_t index, double wall_seconds, bool resumed);

/// The checkpoint holds the same columns as the sweep CSV in hexadecimal
/// floating point so resumed records are bit-exact.
void write_checkpoint_header(std::ostream& out, const Provenance& p);
void write_checkpoint_row(std::ostream& out, const SweepRecord& rec);
/// Completed records keyed by grid index. Rows whose direction disagrees
/// with `grid` or a hash mismatch raise ConfigError; a torn last line is ignored.
std::map<std::size_t, SweepRecord> read_checkpoint(std::istream& in, const std::string& config_hash,
                                                   std::span<const Direction> grid);

}  // namespace rimnull
