// SPDX-License-Identifier: Apache-2.0
#include "rimnull/csv_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include <boost/algorithm/string.hpp>

#include "rimnull/errors.hpp"

namespace rimnull {

namespace {

std::string hexfloat(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%a", v);
    return buf;
}

bool parse_double(const std::string& text, double& out)
{
    if (text.empty()) {
        return false;
    }
    char* end = nullptr;
    out = std::strtod(text.c_str(), &end);
    return end == text.c_str() + text.size();
}

std::vector<std::string> split_csv_line(const std::string& line)
{
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur.push_back('"');
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (quoted) {
        throw ConfigError("csv: unterminated quoted field");
    }
    fields.push_back(std::move(cur));
    return fields;
}

std::string degrees(double rad) { return format_double(rad_to_deg(rad)); }

const char* const kSweepColumns =
    "index,theta_z_deg,phi_deg,status,reference_dB,ims_dB,null_depth_dB,peak_dB,peak_theta_z_deg,peak_phi_deg,"
    "e_r,residual,error";
const char* const kCheckpointColumns =
    "index,theta_z_rad,phi_rad,status,reference_dB,ims_dB,null_depth_dB,peak_dB,peak_theta_z_rad,peak_phi_rad,"
    "e_r,residual,error";

}  // namespace

std::string_view code_version() { return RIMNULL_VERSION; }

Provenance Provenance::from(const RunConfig& cfg, std::string kind)
{
    Provenance p;
    p.kind = std::move(kind);
    p.config_hash = rimnull::config_hash(cfg);
    p.samples_per_wavelength = cfg.mesh.samples_per_wavelength;
    p.cell_subdivisions = cfg.mesh.cell_subdivisions;
    p.dyad_source = std::string(to_string(cfg.dyad_kind));
    return p;
}

void write_header(std::ostream& out, const Provenance& p)
{
    out << "# rimnull " << code_version() << '\n'
        << "# kind " << p.kind << '\n'
        << "# config_hash " << p.config_hash << '\n'
        << "# mesh samples_per_wavelength=" << format_double(p.samples_per_wavelength)
        << " cell_subdivisions=" << p.cell_subdivisions << '\n'
        << "# dyads " << p.dyad_source << '\n'
        << "# units angles in degrees; directivity dB = 10log10(power ratio); field and dyad magnitude dB = "
           "20log10(amplitude ratio); fields are r e^{jkr} E in volts\n";
}

std::size_t CsvTable::column(std::string_view name) const
{
    const auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end()) {
        throw ConfigError("csv: missing column '" + std::string(name) + "'");
    }
    return static_cast<std::size_t>(it - columns.begin());
}

const std::string& CsvTable::text(std::size_t row, std::string_view name) const
{
    return rows.at(row).at(column(name));
}

double CsvTable::number(std::size_t row, std::string_view name) const
{
    const std::string& t = text(row, name);
    double v = 0.0;
    if (!parse_double(t, v)) {
        throw ConfigError("csv: row " + std::to_string(row + 1) + " column '" + std::string(name) +
                          "' is not a number: '" + t + "'");
    }
    return v;
}

CsvTable read_csv(std::istream& in)
{
    CsvTable table;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        if (line.front() == '#') {
            const std::string body = boost::algorithm::trim_copy(line.substr(1));
            const auto space = body.find(' ');
            table.meta[body.substr(0, space)] = space == std::string::npos ? "" : body.substr(space + 1);
            continue;
        }
        auto fields = split_csv_line(line);
        if (table.columns.empty()) {
            table.columns = std::move(fields);
            continue;
        }
        if (fields.size() != table.columns.size()) {
            throw ConfigError("csv: row " + std::to_string(table.rows.size() + 1) + " has " +
                              std::to_string(fields.size()) + " fields, expected " +
                              std::to_string(table.columns.size()));
        }
        table.rows.push_back(std::move(fields));
    }
    return table;
}

CsvTable read_csv_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open '" + path + "'");
    }
    return read_csv(in);
}

std::string csv_escape(std::string_view field)
{
    std::string flat(field);
    std::replace(flat.begin(), flat.end(), '\n', ' ');
    std::replace(flat.begin(), flat.end(), '\r', ' ');
    if (flat.find_first_of(",\"") == std::string::npos) {
        return flat;
    }
    std::string out = "\"";
    for (char c : flat) {
        if (c == '"') {
            out.push_back('"');
        }
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::string format_double(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_pattern_csv(std::ostream& out, const Provenance& p, const FarFieldResult& result, double phi_cut)
{
    write_header(out, p);
    out << "# cut_phi_deg " << degrees(phi_cut) << '\n'
        << "# p_rad_w " << format_double(result.p_rad) << '\n'
        << "theta_z_deg,phi_deg,D_co_dB,D_cr_dB,E_co_re,E_co_im,E_cr_re,E_cr_im\n";
    for (std::size_t i = 0; i < result.directions.size(); ++i) {
        out << degrees(result.cut_angles[i]) << ',' << degrees(phi_cut) << ',' << format_double(result.d_co_db[i])
            << ',' << format_double(result.d_cr_db[i]) << ',' << format_double(result.e_co[i].real()) << ','
            << format_double(result.e_co[i].imag()) << ',' << format_double(result.e_cr[i].real()) << ','
            << format_double(result.e_cr[i].imag()) << '\n';
    }
}

void write_switch_map_csv(std::ostream& out, const Provenance& p, std::span<const UnitCell> cells,
                          std::span<const SwitchState> states)
{
    if (cells.size() != states.size()) {
        throw ContractError("write_switch_map_csv: " + std::to_string(states.size()) + " states for " +
                            std::to_string(cells.size()) + " cells");
    }
    write_header(out, p);
    out << "ring,index_in_ring,theta_p_deg,phi_p_deg,state\n";
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const auto& c = cells[i];
        out << c.ring << ',' << c.index_in_ring << ',' << degrees(c.center.theta_p) << ','
            << degrees(c.center.phi_p) << ',' << to_string(states[i]) << '\n';
    }
}

std::vector<SwitchState> read_switch_map(const CsvTable& table, std::span<const UnitCell> cells)
{
    if (table.rows.size() != cells.size()) {
        throw ConfigError("switch map has " + std::to_string(table.rows.size()) + " cells, tessellation has " +
                          std::to_string(cells.size()));
    }
    std::vector<SwitchState> states;
    states.reserve(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const auto& c = cells[i];
        const bool same_cell = table.number(i, "ring") == static_cast<double>(c.ring) &&
                               table.number(i, "index_in_ring") == static_cast<double>(c.index_in_ring) &&
                               std::abs(table.number(i, "theta_p_deg") - rad_to_deg(c.center.theta_p)) < 1e-9 &&
                               std::abs(table.number(i, "phi_p_deg") - rad_to_deg(c.center.phi_p)) < 1e-9;
        if (!same_cell) {
            throw ConfigError("switch map row " + std::to_string(i + 1) +
                              " does not match the configured tessellation");
        }
        states.push_back(parse_switch_state(table.text(i, "state")));
    }
    return states;
}

void write_sweep_header(std::ostream& out, const Provenance& p)
{
    write_header(out, p);
    out << kSweepColumns << '\n';
}

void write_sweep_row(std::ostream& out, const SweepRecord& r)
{
    out << r.index << ',' << degrees(r.null.theta_z) << ',' << degrees(r.null.phi) << ','
        << (r.ok ? "ok" : "failed") << ',' << format_double(r.reference_db) << ',' << format_double(r.ims_db)
        << ',' << format_double(r.null_depth_db) << ',' << format_double(r.peak_db) << ','
        << degrees(r.peak.theta_z) << ',' << degrees(r.peak.phi) << ',' << format_double(r.e_r) << ','
        << format_double(r.residual) << ',' << csv_escape(r.error) << '\n';
}

void write_timing_header(std::ostream& out, const Provenance& p)
{
    write_header(out, p);
    out << "index,wall_seconds,resumed\n";
}

void write_timing_row(std::ostream& out, std::size_t index, double wall_seconds, bool resumed)
{
    out << index << ',' << format_double(wall_seconds) << ',' << (resumed ? 1 : 0) << '\n';
}

void write_checkpoint_header(std::ostream& out, const Provenance& p)
{
    write_header(out, p);
    out << kCheckpointColumns << '\n';
}

void write_checkpoint_row(std::ostream& out, const SweepRecord& r)
{
    out << r.index << ',' << hexfloat(r.null.theta_z) << ',' << hexfloat(r.null.phi) << ','
        << (r.ok ? "ok" : "failed") << ',' << hexfloat(r.reference_db) << ',' << hexfloat(r.ims_db) << ','
        << hexfloat(r.null_depth_db) << ',' << hexfloat(r.peak_db) << ',' << hexfloat(r.peak.theta_z) << ','
        << hexfloat(r.peak.phi) << ',' << hexfloat(r.e_r) << ',' << hexfloat(r.residual) << ','
        << csv_escape(r.error) << '\n';
}

std::map<std::size_t, SweepRecord> read_checkpoint(std::istream& in, const std::string& config_hash,
                                                   std::span<const Direction> grid)
{
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    if (!text.empty() && text.back() != '\n') {
        text.erase(text.find_last_of('\n') == std::string::npos ? 0 : text.find_last_of('\n') + 1);
    }
    std::istringstream complete(text);
    const CsvTable table = read_csv(complete);
    if (table.meta.count("config_hash") == 0 || table.meta.at("config_hash") != config_hash) {
        throw ConfigError("checkpoint was written for a different configuration");
    }
    std::map<std::size_t, SweepRecord> done;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        SweepRecord r;
        r.index = static_cast<std::size_t>(table.number(i, "index"));
        r.null = {table.number(i, "theta_z_rad"), table.number(i, "phi_rad")};
        if (r.index >= grid.size() || r.null.theta_z != grid[r.index].theta_z || r.null.phi != grid[r.index].phi) {
            throw ConfigError("checkpoint row " + std::to_string(i + 1) + " does not match the sweep grid");
        }
        r.ok = table.text(i, "status") == "ok";
        r.reference_db = table.number(i, "reference_dB");
        r.ims_db = table.number(i, "ims_dB");
        r.null_depth_db = table.number(i, "null_depth_dB");
        r.peak_db = table.number(i, "peak_dB");
        r.peak = {table.number(i, "peak_theta_z_rad"), table.number(i, "peak_phi_rad")};
        r.e_r = table.number(i, "e_r");
        r.residual = table.number(i, "residual");
        r.error = table.text(i, "error");
        done[r.index] = std::move(r);
    }
    return done;
}

}  // namespace rimnull
