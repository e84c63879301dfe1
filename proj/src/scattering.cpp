// SPDX-License-Identifier: Apache-2.0
#include "rimnull/scattering.hpp"

#include <cmath>
#include <array>
#include <fstream>
#include <sstream>

#include <Eigen/SVD>
#include <boost/algorithm/string.hpp>

#include "rimnull/errors.hpp"

namespace rimnull {

namespace {

cdouble polar_deg(double magnitude, double phase_deg)
{
    return std::polar(magnitude, deg_to_rad(phase_deg));
}

// Full-wave unit-cell reflection dyads at theta_li = 31.25 deg, phi_li = 180 deg, 1.5 GHz.
ReflectionDyad ruc_on()
{
    return ReflectionDyad::from_entries(polar_deg(0.97, 93.73), polar_deg(0.185, -146.18),
                                        polar_deg(0.187, 160.74), polar_deg(0.97, 100.65));
}

ReflectionDyad ruc_off()
{
    return ReflectionDyad::from_entries(polar_deg(0.95, -127.12), polar_deg(0.274, 12.92),
                                        polar_deg(0.272, -82.68), polar_deg(0.95, -123.54));
}

constexpr double kTable2Frequency = 1.5e9;
constexpr double kTable2ThetaDeg = 31.25;
constexpr double kFrequencyRelTol = 1e-6;

std::string describe_key(SwitchState state, double frequency, double theta_li)
{
    std::ostringstream os;
    os << "(state=" << to_string(state) << ", f=" << frequency << " Hz, theta_li="
       << rad_to_deg(theta_li) << " deg)";
    return os.str();
}

}  // namespace

ReflectionDyad ReflectionDyad::from_entries(cdouble tt, cdouble tp, cdouble pt, cdouble pp)
{
    ReflectionDyad d;
    d.m << tt, tp, pt, pp;
    return d;
}

ReflectionDyad ReflectionDyad::pec() { return scaled_identity({-1.0, 0.0}); }

ReflectionDyad ReflectionDyad::scaled_identity(cdouble value)
{
    ReflectionDyad d;
    d.m = Mat2c::Identity() * value;
    return d;
}

double ReflectionDyad::largest_singular_value() const
{
    Eigen::JacobiSVD<Mat2c> svd(m);
    return svd.singularValues()(0);
}

std::string_view to_string(SwitchState s) { return s == SwitchState::on ? "on" : "off"; }

SwitchState parse_switch_state(std::string_view text)
{
    std::string t = boost::algorithm::to_lower_copy(boost::algorithm::trim_copy(std::string(text)));
    if (t == "on" || t == "1") {
        return SwitchState::on;
    }
    if (t == "off" || t == "0") {
        return SwitchState::off;
    }
    throw ConfigError("unknown switch state '" + std::string(text) + "' (expected on/off/1/0)");
}

std::string_view to_string(DyadKind kind)
{
    switch (kind) {
    case DyadKind::pec:
        return "pec";
    case DyadKind::ideal_one_bit:
        return "ideal_one_bit";
    case DyadKind::ruc_table2:
        return "ruc_table2";
    case DyadKind::user_table:
        return "user_table";
    }
    return "unknown";
}

DyadKind parse_dyad_kind(std::string_view text)
{
    for (DyadKind k : {DyadKind::pec, DyadKind::ideal_one_bit, DyadKind::ruc_table2, DyadKind::user_table}) {
        if (to_string(k) == text) {
            return k;
        }
    }
    throw ConfigError("unknown dyad source '" + std::string(text) +
                      "' (expected pec, ideal_one_bit, ruc_table2 or user_table)");
}

DyadSource::DyadSource(DyadKind kind, std::vector<DyadEntry> entries, double angle_tolerance)
    : kind_(kind), entries_(std::move(entries)), angle_tolerance_(angle_tolerance)
{
}

DyadSource DyadSource::pec() { return DyadSource(DyadKind::pec, {}, constants::pi); }

DyadSource DyadSource::ideal_one_bit()
{
    return DyadSource(DyadKind::ideal_one_bit, {}, constants::pi);
}

DyadSource DyadSource::ruc_table2()
{
    const double theta = deg_to_rad(kTable2ThetaDeg);
    std::vector<DyadEntry> entries{
        {SwitchState::on, kTable2Frequency, theta, ruc_on()},
        {SwitchState::off, kTable2Frequency, theta, ruc_off()},
    };
    // Incidence varies by at most 1.5 deg across the annulus, so one angle stands in for all.
    return DyadSource(DyadKind::ruc_table2, std::move(entries), deg_to_rad(1.5) + 1e-12);
}

DyadSource DyadSource::user_table(std::vector<DyadEntry> entries)
{
    if (entries.empty()) {
        throw ConfigError("user dyad table is empty");
    }
    return DyadSource(DyadKind::user_table, std::move(entries), deg_to_rad(2.0));
}

DyadSource DyadSource::from_csv(std::istream& in)
{
    std::vector<DyadEntry> entries;
    std::string line;
    int line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        boost::algorithm::trim(line);
        if (line.empty() || line.front() == '#') {
            continue;
        }
        std::vector<std::string> fields;
        boost::algorithm::split(fields, line, boost::is_any_of(","));
        for (auto& f : fields) {
            boost::algorithm::trim(f);
        }
        if (!header_seen && fields.front() == "state") {
            header_seen = true;
            continue;
        }
        if (fields.size() != 11) {
            throw ConfigError("dyad table line " + std::to_string(line_no) + ": expected 11 columns, got " +
                              std::to_string(fields.size()));
        }
        try {
            DyadEntry e;
            e.state = parse_switch_state(fields[0]);
            e.frequency = std::stod(fields[1]);
            e.theta_li = deg_to_rad(std::stod(fields[2]));
            std::array<cdouble, 4> v{};
            for (std::size_t i = 0; i < 4; ++i) {
                v[i] = polar_deg(std::stod(fields[3 + 2 * i]), std::stod(fields[4 + 2 * i]));
            }
            e.dyad = ReflectionDyad::from_entries(v[0], v[1], v[2], v[3]);
            entries.push_back(e);
        } catch (const std::invalid_argument&) {
            throw ConfigError("dyad table line " + std::to_string(line_no) + ": non-numeric field");
        }
    }
    return user_table(std::move(entries));
}

DyadSource DyadSource::from_csv_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open dyad table '" + path + "'");
    }
    return from_csv(in);
}

ReflectionDyad DyadSource::lookup(SwitchState state, double theta_li, double frequency) const
{
    switch (kind_) {
    case DyadKind::pec:
        return ReflectionDyad::pec();
    case DyadKind::ideal_one_bit:
        return ReflectionDyad::scaled_identity(state == SwitchState::on ? cdouble{0.0, 1.0}
                                                                        : cdouble{0.0, -1.0});
    case DyadKind::ruc_table2:
    case DyadKind::user_table:
        break;
    }

    const DyadEntry* best = nullptr;
    double best_dist = 0.0;
    for (const auto& e : entries_) {
        if (e.state != state) {
            continue;
        }
        if (std::abs(e.frequency - frequency) > kFrequencyRelTol * std::abs(e.frequency)) {
            continue;
        }
        const double dist = std::abs(e.theta_li - theta_li);
        if (best == nullptr || dist < best_dist) {
            best = &e;
            best_dist = dist;
        }
    }
    if (best == nullptr || best_dist > angle_tolerance_) {
        throw LookupError("no reflection dyad for " + describe_key(state, frequency, theta_li) + " in " +
                          std::string(to_string(kind_)) + " table");
    }
    return best->dyad;
}

PolarizationBasis local_polarization_basis(const SurfaceSample& sample)
{
    PolarizationBasis b;
    b.k_i = sample.r_hat();
    const Vec3& n = sample.n_hat();
    b.k_r = b.k_i - 2.0 * b.k_i.dot(n) * n;
    b.e_te = sample.frame.y;
    b.e_tm_i = b.e_te.cross(b.k_i);
    b.e_tm_r = b.k_r.cross(b.e_te);
    return b;
}

CVec2 incident_components(const PolarizationBasis& basis, const CVec3& e_i)
{
    const CVec3 tm = basis.e_tm_i.cast<cdouble>();
    const CVec3 te = basis.e_te.cast<cdouble>();
    // Basis vectors are real, so the plain (unconjugated) projection is the component.
    return {tm.transpose() * e_i, te.transpose() * e_i};
}

CVec3 reflected_field(const PolarizationBasis& basis, const ReflectionDyad& dyad, const CVec3& e_i)
{
    const CVec2 out = dyad.m * incident_components(basis, e_i);
    return basis.e_tm_r.cast<cdouble>() * out(0) + basis.e_te.cast<cdouble>() * out(1);
}

CVec3 surface_current(const SurfaceSample& sample, const ReflectionDyad& dyad, const CVec3& e_i)
{
    const PolarizationBasis basis = local_polarization_basis(sample);
    const cdouble longitudinal = basis.k_i.cast<cdouble>().transpose() * e_i;
    if (std::abs(longitudinal) > 1e-9 * e_i.norm()) {
        throw ContractError("surface_current: incident field is not transverse to k_i");
    }
    const CVec3 e_r = reflected_field(basis, dyad, e_i);
    const CVec3 k_r = basis.k_r.cast<cdouble>();
    const CVec3 h_r = k_r.cross(e_r) / constants::eta0;
    return 2.0 * sample.n_hat().cast<cdouble>().cross(h_r);
}

}  // namespace rimnull
