// SPDX-License-Identifier: Apache-2.0
#include "rimnull/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "rimnull/efficiency.hpp"
#include "rimnull/errors.hpp"
#include "rimnull/parallel.hpp"

namespace rimnull {

namespace {

namespace pt = boost::property_tree;

const std::map<std::string, std::set<std::string>>& schema()
{
    static const std::map<std::string, std::set<std::string>> s = {
        {"dish", {"diameter_m", "inner_diameter_m", "focal_length_m", "frequency_hz"}},
        {"feed", {"exponent", "amplitude_v", "polarization"}},
        {"mesh", {"samples_per_wavelength", "cell_subdivisions"}},
        {"dyads", {"source", "table"}},
        {"null", {"theta_z_deg", "phi_deg", "states"}},
        {"pattern", {"phi_deg", "theta_min_deg", "theta_max_deg", "step_deg"}},
        {"efficiency", {"spillover_taper"}},
        {"sweep", {"theta_z_deg", "phi_deg"}},
        {"output", {"directory"}},
        {"run", {"workers"}},
    };
    return s;
}

[[noreturn]] void fail(const std::string& key, const std::string& why)
{
    throw ConfigError(key + ": " + why);
}

double to_double(const std::string& key, const std::string& raw)
{
    const std::string text = boost::algorithm::trim_copy(raw);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v)) {
        fail(key, "expected a finite number, got '" + raw + "'");
    }
    return v;
}

int to_int(const std::string& key, const std::string& raw)
{
    const std::string text = boost::algorithm::trim_copy(raw);
    int v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
        fail(key, "expected an integer, got '" + raw + "'");
    }
    return v;
}

std::vector<std::string> split_list(const std::string& raw)
{
    std::vector<std::string> parts;
    boost::algorithm::split(parts, raw, boost::algorithm::is_any_of(","));
    for (auto& p : parts) {
        boost::algorithm::trim(p);
    }
    parts.erase(std::remove(parts.begin(), parts.end(), std::string{}), parts.end());
    return parts;
}

// "a, b, c" or an inclusive range "start:stop:step".
std::vector<double> to_degree_list(const std::string& key, const std::string& raw)
{
    std::vector<double> out;
    if (raw.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        boost::algorithm::split(parts, raw, boost::algorithm::is_any_of(":"));
        if (parts.size() != 3) {
            fail(key, "range must be start:stop:step");
        }
        const double start = to_double(key, parts[0]);
        const double stop = to_double(key, parts[1]);
        const double step = to_double(key, parts[2]);
        if (!(step > 0.0) || stop < start) {
            fail(key, "range needs step > 0 and stop >= start");
        }
        const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-9));
        if (n > 1000000) {
            fail(key, "range has too many points");
        }
        for (long i = 0; i <= n; ++i) {
            out.push_back(start + static_cast<double>(i) * step);
        }
    } else {
        for (const auto& p : split_list(raw)) {
            out.push_back(to_double(key, p));
        }
    }
    if (out.empty()) {
        fail(key, "list is empty");
    }
    return out;
}

class Reader {
public:
    explicit Reader(const pt::ptree& tree) : tree_(tree) {}

    std::optional<std::string> raw(const std::string& key) const
    {
        if (const auto v = tree_.get_optional<std::string>(pt::ptree::path_type(key, '.'))) {
            return *v;
        }
        return std::nullopt;
    }
    double number(const std::string& key, double fallback) const
    {
        const auto v = raw(key);
        return v ? to_double(key, *v) : fallback;
    }
    std::optional<double> optional_number(const std::string& key) const
    {
        const auto v = raw(key);
        return v ? std::optional<double>(to_double(key, *v)) : std::nullopt;
    }
    double positive(const std::string& key, double fallback) const
    {
        const double v = number(key, fallback);
        if (!(v > 0.0)) {
            fail(key, "must be positive");
        }
        return v;
    }

private:
    const pt::ptree& tree_;
};

void check_keys(const pt::ptree& tree)
{
    for (const auto& [section, body] : tree) {
        const auto it = schema().find(section);
        if (body.empty() && !body.data().empty()) {
            fail(section, "key outside any section");
        }
        if (it == schema().end()) {
            fail(section, "unknown section");
        }
        for (const auto& [key, value] : body) {
            if (!value.empty()) {
                fail(section + "." + key, "nested keys are not supported");
            }
            if (!it->second.contains(key)) {
                fail(section + "." + key, "unknown key");
            }
        }
    }
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("dyads.table: cannot open '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string format_number(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::string_view to_string(Polarization pol) { return pol == Polarization::x ? "x" : "y"; }

RunConfig parse_run_config(std::istream& in, const std::string& base_dir)
{
    pt::ptree tree;
    try {
        pt::ini_parser::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError("syntax: " + e.message() + " (line " + std::to_string(e.line()) + ")");
    }
    check_keys(tree);
    const Reader r(tree);
    RunConfig cfg;

    cfg.diameter = r.positive("dish.diameter_m", cfg.diameter);
    cfg.inner_diameter = r.positive("dish.inner_diameter_m", cfg.diameter);
    if (cfg.inner_diameter > cfg.diameter) {
        fail("dish.inner_diameter_m", "must not exceed dish.diameter_m");
    }
    cfg.focal_length = r.positive("dish.focal_length_m", cfg.focal_length);
    cfg.frequency = r.positive("dish.frequency_hz", cfg.frequency);

    cfg.feed_exponent = r.positive("feed.exponent", cfg.feed_exponent);
    cfg.feed_amplitude = r.positive("feed.amplitude_v", cfg.feed_amplitude);
    if (const auto p = r.raw("feed.polarization")) {
        const std::string v = boost::algorithm::to_lower_copy(boost::algorithm::trim_copy(*p));
        if (v == "x") {
            cfg.polarization = Polarization::x;
        } else if (v == "y") {
            cfg.polarization = Polarization::y;
        } else {
            fail("feed.polarization", "expected x or y, got '" + *p + "'");
        }
    }

    cfg.mesh.samples_per_wavelength = r.number("mesh.samples_per_wavelength", cfg.mesh.samples_per_wavelength);
    if (!(cfg.mesh.samples_per_wavelength >= 2.0)) {
        fail("mesh.samples_per_wavelength", "must be at least 2");
    }
    if (const auto v = r.raw("mesh.cell_subdivisions")) {
        cfg.mesh.cell_subdivisions = to_int("mesh.cell_subdivisions", *v);
        if (cfg.mesh.cell_subdivisions < 1) {
            fail("mesh.cell_subdivisions", "must be at least 1");
        }
    }

    if (const auto v = r.raw("dyads.source")) {
        try {
            cfg.dyad_kind = parse_dyad_kind(boost::algorithm::trim_copy(*v));
        } catch (const ConfigError& e) {
            fail("dyads.source", e.what());
        }
    }
    const auto table = r.raw("dyads.table");
    if (cfg.dyad_kind == DyadKind::user_table) {
        if (!table || boost::algorithm::trim_copy(*table).empty()) {
            fail("dyads.table", "required when dyads.source = user_table");
        }
        std::filesystem::path path(boost::algorithm::trim_copy(*table));
        if (path.is_relative()) {
            path = std::filesystem::path(base_dir) / path;
        }
        cfg.dyad_table = path.lexically_normal().string();
        const std::string bytes = read_file(cfg.dyad_table);
        cfg.dyad_table_digest = fnv1a64(bytes);
        try {
            std::istringstream table_in(bytes);
            (void)DyadSource::from_csv(table_in);
        } catch (const std::exception& e) {
            fail("dyads.table", e.what());
        }
    } else if (table) {
        fail("dyads.table", "only valid with dyads.source = user_table");
    }

    if (tree.get_child_optional("null")) {
        NullConfig null;
        const auto theta = r.optional_number("null.theta_z_deg");
        if (!theta) {
            fail("null.theta_z_deg", "required in the [null] section");
        }
        if (*theta < 0.0 || *theta >= 90.0) {
            fail("null.theta_z_deg", "must lie in [0, 90)");
        }
        null.direction = Direction::degrees(*theta, r.number("null.phi_deg", 0.0));
        if (const auto s = r.raw("null.states")) {
            null.states.clear();
            for (const auto& item : split_list(*s)) {
                SwitchState st{};
                try {
                    st = parse_switch_state(item);
                } catch (const ConfigError& e) {
                    fail("null.states", e.what());
                }
                if (std::find(null.states.begin(), null.states.end(), st) != null.states.end()) {
                    fail("null.states", "duplicate state '" + item + "'");
                }
                null.states.push_back(st);
            }
            if (null.states.empty()) {
                fail("null.states", "must name at least one state");
            }
        }
        cfg.null = null;
    }

    if (const auto phi = r.optional_number("pattern.phi_deg")) {
        cfg.pattern.phi = deg_to_rad(*phi);
    }
    const double tmin = r.number("pattern.theta_min_deg", rad_to_deg(cfg.pattern.theta_min));
    const double tmax = r.number("pattern.theta_max_deg", rad_to_deg(cfg.pattern.theta_max));
    const double step = r.number("pattern.step_deg", rad_to_deg(cfg.pattern.step));
    if (tmin < -90.0 || tmax > 90.0) {
        fail("pattern.theta_min_deg", "cut limits must lie in [-90, 90]");
    }
    if (!(tmax > tmin)) {
        fail("pattern.theta_max_deg", "must exceed pattern.theta_min_deg");
    }
    if (!(step > 0.0)) {
        fail("pattern.step_deg", "must be positive");
    }
    cfg.pattern.theta_min = deg_to_rad(tmin);
    cfg.pattern.theta_max = deg_to_rad(tmax);
    cfg.pattern.step = deg_to_rad(step);

    if (const auto eta = r.optional_number("efficiency.spillover_taper")) {
        if (!(*eta > 0.0 && *eta <= 1.0)) {
            fail("efficiency.spillover_taper", "must lie in (0, 1]");
        }
        cfg.spillover_taper = *eta;
    }

    if (tree.get_child_optional("sweep")) {
        const auto t = r.raw("sweep.theta_z_deg");
        const auto p = r.raw("sweep.phi_deg");
        if (!t) {
            fail("sweep.theta_z_deg", "required in the [sweep] section");
        }
        for (double deg : to_degree_list("sweep.theta_z_deg", *t)) {
            if (deg < 0.0 || deg >= 90.0) {
                fail("sweep.theta_z_deg", "values must lie in [0, 90)");
            }
            cfg.sweep.theta_z.push_back(deg_to_rad(deg));
        }
        for (double deg : p ? to_degree_list("sweep.phi_deg", *p) : std::vector<double>{0.0}) {
            cfg.sweep.phi.push_back(deg_to_rad(deg));
        }
    }

    if (const auto dir = r.raw("output.directory")) {
        cfg.output_directory = boost::algorithm::trim_copy(*dir);
        if (cfg.output_directory.empty()) {
            fail("output.directory", "must not be empty");
        }
    }
    if (std::filesystem::path(cfg.output_directory).is_relative()) {
        cfg.output_directory = (std::filesystem::path(base_dir) / cfg.output_directory).lexically_normal().string();
    }

    if (const auto w = r.raw("run.workers")) {
        cfg.workers = to_int("run.workers", *w);
        if (cfg.workers < 0) {
            fail("run.workers", "must be >= 0");
        }
    }

    try {
        (void)cfg.dish();
    } catch (const DomainError& e) {
        fail("dish", e.what());
    }
    return cfg;
}

RunConfig load_run_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    const auto dir = std::filesystem::path(path).parent_path();
    return parse_run_config(in, dir.empty() ? "." : dir.string());
}

DishConfig RunConfig::dish() const
{
    return DishConfig(diameter, inner_diameter, focal_length, frequency, feed_exponent, polarization);
}

DyadSource RunConfig::dyad_source() const
{
    switch (dyad_kind) {
    case DyadKind::pec:
        return DyadSource::pec();
    case DyadKind::ideal_one_bit:
        return DyadSource::ideal_one_bit();
    case DyadKind::ruc_table2:
        return DyadSource::ruc_table2();
    case DyadKind::user_table:
        return DyadSource::from_csv_file(dyad_table);
    }
    throw ContractError("unhandled dyad source");
}

double RunConfig::eta_s_eta_t() const
{
    if (spillover_taper) {
        return *spillover_taper;
    }
    return inner_diameter < diameter ? kSpilloverTaperReallocatedRim : kSpilloverTaperFullDish;
}

double RunConfig::cut_azimuth() const
{
    if (pattern.phi) {
        return *pattern.phi;
    }
    return null ? null->direction.phi : 0.0;
}

int RunConfig::resolved_workers() const
{
    if (std::getenv("RIMNULL_WORKERS") != nullptr || workers == 0) {
        return default_workers();
    }
    return workers;
}

std::string canonical_form(const RunConfig& cfg)
{
    std::vector<std::string> lines;
    const auto add = [&](const std::string& key, const std::string& value) { lines.push_back(key + "=" + value); };
    const auto num = [&](const std::string& key, double v) { add(key, format_number(v)); };
    const auto deg = [&](const std::string& key, double rad) { num(key, rad_to_deg(rad)); };

    num("dish.diameter_m", cfg.diameter);
    num("dish.inner_diameter_m", cfg.inner_diameter);
    num("dish.focal_length_m", cfg.focal_length);
    num("dish.frequency_hz", cfg.frequency);
    num("feed.exponent", cfg.feed_exponent);
    num("feed.amplitude_v", cfg.feed_amplitude);
    add("feed.polarization", std::string(to_string(cfg.polarization)));
    num("mesh.samples_per_wavelength", cfg.mesh.samples_per_wavelength);
    add("mesh.cell_subdivisions", std::to_string(cfg.mesh.cell_subdivisions));
    add("dyads.source", std::string(to_string(cfg.dyad_kind)));
    if (cfg.dyad_kind == DyadKind::user_table) {
        char digest[32];
        std::snprintf(digest, sizeof digest, "%016llx", static_cast<unsigned long long>(cfg.dyad_table_digest));
        add("dyads.table_digest", digest);
    }
    if (cfg.null) {
        deg("null.theta_z_deg", cfg.null->direction.theta_z);
        deg("null.phi_deg", cfg.null->direction.phi);
        std::vector<std::string> names;
        for (SwitchState s : cfg.null->states) {
            names.emplace_back(to_string(s));
        }
        add("null.states", boost::algorithm::join(names, ","));
    }
    deg("pattern.phi_deg", cfg.cut_azimuth());
    deg("pattern.theta_min_deg", cfg.pattern.theta_min);
    deg("pattern.theta_max_deg", cfg.pattern.theta_max);
    deg("pattern.step_deg", cfg.pattern.step);
    num("efficiency.spillover_taper", cfg.eta_s_eta_t());
    const auto list = [&](const std::string& key, const std::vector<double>& values) {
        std::vector<std::string> items;
        for (double v : values) {
            items.push_back(format_number(rad_to_deg(v)));
        }
        add(key, boost::algorithm::join(items, ","));
    };
    if (!cfg.sweep.theta_z.empty()) {
        list("sweep.theta_z_deg", cfg.sweep.theta_z);
        list("sweep.phi_deg", cfg.sweep.phi);
    }
    // Output location and worker count do not affect results.
    std::sort(lines.begin(), lines.end());
    return boost::algorithm::join(lines, "\n") + "\n";
}

std::uint64_t fnv1a64(std::string_view bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string config_hash(const RunConfig& cfg)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(fnv1a64(canonical_form(cfg))));
    return buf;
}

}  // namespace rimnull
