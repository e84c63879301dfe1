// SPDX-License-Identifier: Apache-2.0
#include "rimnull/farfield.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <boost/math/quadrature/gauss.hpp>

#include "rimnull/errors.hpp"
#include "rimnull/parallel.hpp"
#include "rimnull/summation.hpp"

namespace rimnull {

Vec3 Direction::unit() const
{
    const double s = std::sin(theta_z);
    return {s * std::cos(phi), s * std::sin(phi), -std::cos(theta_z)};
}

double Direction::global_theta() const { return constants::pi - theta_z; }

Direction Direction::degrees(double theta_z_deg, double phi_deg)
{
    return {deg_to_rad(theta_z_deg), deg_to_rad(phi_deg)};
}

Direction Direction::on_cut(double signed_theta_z, double phi_cut)
{
    if (signed_theta_z < 0.0) {
        return {-signed_theta_z, phi_cut + constants::pi};
    }
    return {signed_theta_z, phi_cut};
}

void CurrentSheet::add(const Vec3& position, const CVec3& current, double dS)
{
    x_.push_back(position.x());
    y_.push_back(position.y());
    z_.push_back(position.z());
    jxr_.push_back(current.x().real() * dS);
    jxi_.push_back(current.x().imag() * dS);
    jyr_.push_back(current.y().real() * dS);
    jyi_.push_back(current.y().imag() * dS);
    jzr_.push_back(current.z().real() * dS);
    jzi_.push_back(current.z().imag() * dS);
}

void CurrentSheet::append(const CurrentSheet& other)
{
    if (other.k_ != k_) {
        throw ContractError("CurrentSheet::append: wavenumber mismatch");
    }
    const auto cat = [](std::vector<double>& a, const std::vector<double>& b) {
        a.insert(a.end(), b.begin(), b.end());
    };
    cat(x_, other.x_);
    cat(y_, other.y_);
    cat(z_, other.z_);
    cat(jxr_, other.jxr_);
    cat(jxi_, other.jxi_);
    cat(jyr_, other.jyr_);
    cat(jyi_, other.jyi_);
    cat(jzr_, other.jzr_);
    cat(jzi_, other.jzi_);
}

void CurrentSheet::reserve(std::size_t n)
{
    for (auto* v : {&x_, &y_, &z_, &jxr_, &jxi_, &jyr_, &jyi_, &jzr_, &jzi_}) {
        v->reserve(n);
    }
}

CVec3 CurrentSheet::moment(std::size_t i) const
{
    return {cdouble(jxr_[i], jxi_[i]), cdouble(jyr_[i], jyi_[i]), cdouble(jzr_[i], jzi_[i])};
}

struct RadiationKernel {
    using Partial = std::array<double, 6>;

    static Partial chunk(const CurrentSheet& s, const Vec3& u, std::size_t chunk_index)
    {
        const std::size_t begin = chunk_index * kRadiateChunk;
        const std::size_t end = std::min(begin + kRadiateChunk, s.size());
        const double kx = s.k_ * u.x();
        const double ky = s.k_ * u.y();
        const double kz = s.k_ * u.z();
        std::array<CompensatedSum, 6> acc;
        for (std::size_t i = begin; i < end; ++i) {
            const double phase = kx * s.x_[i] + ky * s.y_[i] + kz * s.z_[i];
            const double c = std::cos(phase);
            const double sn = std::sin(phase);
            acc[0].add(s.jxr_[i] * c - s.jxi_[i] * sn);
            acc[1].add(s.jxr_[i] * sn + s.jxi_[i] * c);
            acc[2].add(s.jyr_[i] * c - s.jyi_[i] * sn);
            acc[3].add(s.jyr_[i] * sn + s.jyi_[i] * c);
            acc[4].add(s.jzr_[i] * c - s.jzi_[i] * sn);
            acc[5].add(s.jzr_[i] * sn + s.jzi_[i] * c);
        }
        Partial out{};
        for (std::size_t c = 0; c < 6; ++c) {
            out[c] = acc[c].value();
        }
        return out;
    }

    static CVec3 reduce(const CurrentSheet& s, const std::vector<Partial>& partials)
    {
        std::array<CompensatedSum, 6> acc;
        for (const auto& p : partials) {
            for (std::size_t c = 0; c < 6; ++c) {
                acc[c].add(p[c]);
            }
        }
        const cdouble prefactor = -constants::j * s.k_ * constants::eta0 / (4.0 * constants::pi);
        return CVec3(cdouble(acc[0].value(), acc[1].value()), cdouble(acc[2].value(), acc[3].value()),
                     cdouble(acc[4].value(), acc[5].value())) *
               prefactor;
    }

    static std::size_t chunk_count(const CurrentSheet& s)
    {
        return (s.size() + kRadiateChunk - 1) / kRadiateChunk;
    }
};

CVec3 radiate(const CurrentSheet& sheet, const Direction& dir, int workers)
{
    if (sheet.empty()) {
        throw DomainError("radiate: empty current list");
    }
    const Vec3 u = dir.unit();
    std::vector<RadiationKernel::Partial> partials(RadiationKernel::chunk_count(sheet));
    parallel_for(partials.size(), workers,
                 [&](std::size_t c) { partials[c] = RadiationKernel::chunk(sheet, u, c); });
    return RadiationKernel::reduce(sheet, partials);
}

std::vector<CVec3> radiate(const CurrentSheet& sheet, std::span<const Direction> dirs, int workers)
{
    if (sheet.empty()) {
        throw DomainError("radiate: empty current list");
    }
    std::vector<CVec3> out(dirs.size());
    const std::size_t n_chunks = RadiationKernel::chunk_count(sheet);
    parallel_for(dirs.size(), workers, [&](std::size_t d) {
        const Vec3 u = dirs[d].unit();
        std::vector<RadiationKernel::Partial> partials(n_chunks);
        for (std::size_t c = 0; c < n_chunks; ++c) {
            partials[c] = RadiationKernel::chunk(sheet, u, c);
        }
        out[d] = RadiationKernel::reduce(sheet, partials);
    });
    return out;
}

SphericalField to_spherical(const CVec3& e, const Direction& dir)
{
    const double theta = dir.global_theta();
    const CVec3 r_hat = spherical_r_hat(theta, dir.phi).cast<cdouble>();
    const CVec3 t_hat = spherical_theta_hat(theta, dir.phi).cast<cdouble>();
    const CVec3 p_hat = spherical_phi_hat(theta, dir.phi).cast<cdouble>();
    return {r_hat.transpose() * e, t_hat.transpose() * e, p_hat.transpose() * e};
}

LudwigField ludwig_copol(const SphericalField& e, double phi, Polarization pol)
{
    const double s = std::sin(phi);
    const double c = std::cos(phi);
    if (pol == Polarization::x) {
        return {-c * e.theta - s * e.phi, -s * e.theta + c * e.phi};
    }
    return {-s * e.theta + c * e.phi, -c * e.theta - s * e.phi};
}

LudwigField ludwig_field(const CVec3& e, const Direction& dir, Polarization pol)
{
    return ludwig_copol(to_spherical(e, dir), dir.phi, pol);
}

double directivity_db(cdouble e, double p_rad)
{
    if (!(p_rad > 0.0)) {
        throw DomainError("directivity: radiated power must be positive");
    }
    const double intensity = std::norm(e) / (2.0 * constants::eta0);
    if (intensity == 0.0) {
        return -std::numeric_limits<double>::infinity();
    }
    return 10.0 * std::log10(intensity / (p_rad / (4.0 * constants::pi)));
}

FarFieldResult evaluate_pattern(const CurrentSheet& sheet, Polarization pol, double p_rad,
                                std::span<const Direction> dirs, int workers)
{
    FarFieldResult res;
    res.p_rad = p_rad;
    res.directions.assign(dirs.begin(), dirs.end());
    const auto fields = radiate(sheet, dirs, workers);
    res.e_co.reserve(dirs.size());
    for (std::size_t i = 0; i < dirs.size(); ++i) {
        const auto lf = ludwig_field(fields[i], dirs[i], pol);
        res.cut_angles.push_back(dirs[i].theta_z);
        res.e_co.push_back(lf.co);
        res.e_cr.push_back(lf.cr);
        res.d_co_db.push_back(directivity_db(lf.co, p_rad));
        res.d_cr_db.push_back(directivity_db(lf.cr, p_rad));
        if (res.d_co_db.back() > res.summary.peak_db) {
            res.summary.peak_db = res.d_co_db.back();
            res.summary.peak = dirs[i];
        }
    }
    return res;
}

FarFieldResult pattern_cut(const CurrentSheet& sheet, Polarization pol, double p_rad, double phi_cut,
                           double theta_min, double theta_max, double step, int workers)
{
    if (!(step > 0.0)) {
        throw DomainError("pattern_cut: step must be positive");
    }
    if (theta_max < theta_min) {
        throw DomainError("pattern_cut: empty angular range");
    }
    const auto n = static_cast<std::size_t>(std::floor((theta_max - theta_min) / step + 1e-9)) + 1;
    std::vector<Direction> dirs;
    std::vector<double> signed_angles;
    dirs.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double a = theta_min + static_cast<double>(i) * step;
        signed_angles.push_back(a);
        dirs.push_back(Direction::on_cut(a, phi_cut));
    }
    auto res = evaluate_pattern(sheet, pol, p_rad, dirs, workers);
    res.cut_angles = std::move(signed_angles);
    return res;
}

namespace {

Direction from_direction_cosines(double sx, double sy)
{
    const double s = std::min(1.0, std::hypot(sx, sy));
    return {std::asin(s), s == 0.0 ? 0.0 : std::atan2(sy, sx)};
}

}  // namespace

PeakResult find_peak(const CurrentSheet& sheet, Polarization pol, double p_rad, int workers)
{
    PeakResult best;
    const auto eval = [&](double sx, double sy) {
        const Direction d = from_direction_cosines(sx, sy);
        ++best.evaluations;
        return directivity_db(ludwig_field(radiate(sheet, d, workers), d, pol).co, p_rad);
    };

    // Coarse seed: boresight plus a ring, then compass refinement.
    double bx = 0.0;
    double by = 0.0;
    double bval = eval(0.0, 0.0);
    const double seed = std::sin(deg_to_rad(0.05));
    for (int i = 0; i < 8; ++i) {
        const double a = constants::two_pi * i / 8.0;
        const double v = eval(seed * std::cos(a), seed * std::sin(a));
        if (v > bval) {
            bval = v;
            bx = seed * std::cos(a);
            by = seed * std::sin(a);
        }
    }
    double h = 0.5 * seed;
    const double h_min = std::sin(deg_to_rad(1e-5));
    while (h > h_min) {
        bool moved = false;
        for (const auto& [dx, dy] : {std::pair{h, 0.0}, {-h, 0.0}, {0.0, h}, {0.0, -h}}) {
            const double v = eval(bx + dx, by + dy);
            if (v > bval) {
                bval = v;
                bx += dx;
                by += dy;
                moved = true;
                break;
            }
        }
        if (!moved) {
            h *= 0.5;
        }
    }
    best.direction = from_direction_cosines(bx, by);
    best.d_co_db = bval;
    return best;
}

PowerGrid PowerGrid::forward_hemisphere()
{
    PowerGrid g;
    g.edges = {0.0, deg_to_rad(2.0), deg_to_rad(10.0), deg_to_rad(30.0), deg_to_rad(90.0)};
    g.widths = {deg_to_rad(0.1), deg_to_rad(0.25), deg_to_rad(1.0), deg_to_rad(2.0)};
    g.n_phi = 16;
    return g;
}

PowerGrid PowerGrid::rear_hemisphere()
{
    PowerGrid g;
    g.edges = {deg_to_rad(90.0), deg_to_rad(180.0)};
    g.widths = {deg_to_rad(0.5)};
    g.n_phi = 16;
    return g;
}

double integrate_power(const CurrentSheet& sheet, const PowerGrid& grid, int workers, const FeedConfig* direct)
{
    if (grid.edges.size() != grid.widths.size() + 1 || grid.n_phi < 1) {
        throw DomainError("integrate_power: malformed grid");
    }
    using Rule = boost::math::quadrature::gauss<double, 8>;
    const auto& abscissa = Rule::abscissa();
    const auto& weights = Rule::weights();

    std::vector<Direction> dirs;
    std::vector<double> w;
    const double d_phi = constants::two_pi / grid.n_phi;
    for (std::size_t seg = 0; seg < grid.widths.size(); ++seg) {
        const double lo = grid.edges[seg];
        const double hi = grid.edges[seg + 1];
        const int panels = std::max(1, static_cast<int>(std::ceil((hi - lo) / grid.widths[seg] - 1e-9)));
        const double width = (hi - lo) / panels;
        for (int p = 0; p < panels; ++p) {
            const double mid = lo + (p + 0.5) * width;
            for (std::size_t a = 0; a < abscissa.size(); ++a) {
                for (double sign : {-1.0, 1.0}) {
                    if (abscissa[a] == 0.0 && sign > 0.0) {
                        continue;
                    }
                    const double theta = mid + sign * abscissa[a] * 0.5 * width;
                    const double wt = weights[a] * 0.5 * width * std::sin(theta) * d_phi;
                    for (int ip = 0; ip < grid.n_phi; ++ip) {
                        dirs.push_back({theta, (ip + 0.5) * d_phi});
                        w.push_back(wt);
                    }
                }
            }
        }
    }

    const auto fields = radiate(sheet, dirs, workers);
    CompensatedSum total;
    for (std::size_t i = 0; i < dirs.size(); ++i) {
        CVec3 field = fields[i];
        if (direct != nullptr) {
            field += feed_far_field(*direct, dirs[i].global_theta(), dirs[i].phi);
        }
        const auto sph = to_spherical(field, dirs[i]);
        total.add(w[i] * (std::norm(sph.theta) + std::norm(sph.phi)));
    }
    return total.value() / (2.0 * constants::eta0);
}

}  // namespace rimnull
