// SPDX-License-Identifier: Apache-2.0
#include "rimnull/geometry.hpp"

#include <cmath>
#include <iostream>
#include <limits>
#include <tuple>

#include <boost/math/tools/roots.hpp>

#include "rimnull/constants.hpp"
#include "rimnull/errors.hpp"

namespace rimnull {

namespace {

double sec(double x) { return 1.0 / std::cos(x); }

}  // namespace

SubtendedAngles subtended_angles(double diameter, double inner_diameter, double focal_length)
{
    if (!(diameter > 0.0) || !(inner_diameter > 0.0) || !(focal_length > 0.0)) {
        throw DomainError("subtended_angles: D, D0 and F must be positive");
    }
    if (inner_diameter > diameter) {
        throw DomainError("subtended_angles: D0 must not exceed D");
    }
    return {2.0 * std::atan(diameter / (4.0 * focal_length)),
            2.0 * std::atan(inner_diameter / (4.0 * focal_length))};
}

DishConfig::DishConfig(double diameter, double inner_diameter, double focal_length, double frequency,
                       double feed_exponent, Polarization polarization)
    : diameter_(diameter),
      inner_diameter_(inner_diameter),
      focal_length_(focal_length),
      frequency_(frequency),
      feed_exponent_(feed_exponent),
      polarization_(polarization),
      wavelength_(0.0),
      angles_(subtended_angles(diameter, inner_diameter, focal_length))
{
    if (!(frequency > 0.0)) {
        throw DomainError("DishConfig: frequency must be positive");
    }
    if (!(feed_exponent > 0.0)) {
        throw DomainError("DishConfig: feed exponent q must be positive");
    }
    wavelength_ = constants::speed_of_light / frequency;
}

double DishConfig::wavenumber() const { return constants::two_pi / wavelength_; }

DishConfig DishConfig::solid() const
{
    return DishConfig(diameter_, diameter_, focal_length_, frequency_, feed_exponent_, polarization_);
}

SurfacePoint surface_point(double theta_p, double phi_p, double focal_length)
{
    if (!(theta_p >= 0.0) || !(theta_p < constants::pi)) {
        throw DomainError("surface_point: theta' must lie in [0, pi)");
    }
    const double half_sec = sec(0.5 * theta_p);
    const double r = focal_length * half_sec * half_sec;
    const double st = std::sin(theta_p);
    return {r, Vec3(r * st * std::cos(phi_p), r * st * std::sin(phi_p), r * std::cos(theta_p))};
}

LocalFrame local_frame(double theta_p, double phi_p)
{
    const double sh = std::sin(0.5 * theta_p);
    const double ch = std::cos(0.5 * theta_p);
    const Vec3 n = -Vec3(sh * std::cos(phi_p), sh * std::sin(phi_p), ch);
    const Vec3 k(std::sin(theta_p) * std::cos(phi_p), std::sin(theta_p) * std::sin(phi_p),
                 std::cos(theta_p));

    Vec3 y = n.cross(k);
    const double norm = y.norm();
    if (norm < 1e-14) {
        y = Vec3::UnitY();
    } else {
        y /= norm;
    }
    const Vec3 x = y.cross(n).normalized();
    return {x, y, n};
}

double area_jacobian(double theta_p, double focal_length)
{
    const double half_sec = sec(0.5 * theta_p);
    const double r = focal_length * half_sec * half_sec;
    return r * r * std::sin(theta_p) * half_sec;
}

SurfaceSample make_sample(double theta_p, double phi_p, double focal_length, double dS, Region region)
{
    const auto pt = surface_point(theta_p, phi_p, focal_length);
    SurfaceSample s;
    s.theta_p = theta_p;
    s.phi_p = phi_p;
    s.r_i = pt.r;
    s.position = pt.position;
    s.frame = local_frame(theta_p, phi_p);
    s.dS = dS;
    s.region = region;
    return s;
}

double meridian_arc_length(double theta_p, double focal_length)
{
    const double u = 0.5 * theta_p;
    const double su = sec(u);
    const double tu = std::tan(u);
    return focal_length * (su * tu + std::log(su + tu));
}

double theta_at_arc_length(double arc, double focal_length)
{
    if (arc <= 0.0) {
        return 0.0;
    }
    const auto f = [&](double theta) {
        const double su = sec(0.5 * theta);
        return std::make_tuple(meridian_arc_length(theta, focal_length) - arc,
                               focal_length * su * su * su);
    };
    std::uintmax_t iterations = 100;
    const double upper = constants::pi * (1.0 - 1e-9);
    return boost::math::tools::newton_raphson_iterate(f, std::min(arc / focal_length, 1.0), 0.0,
                                                      upper, std::numeric_limits<double>::digits - 2,
                                                      iterations);
}

std::vector<SurfaceSample> mesh_paraboloid(double focal_length, double wavelength, double theta_max,
                                           double samples_per_wavelength, Region region)
{
    if (!(samples_per_wavelength >= 2.0)) {
        throw DomainError("mesh_paraboloid: need at least 2 samples per wavelength");
    }
    std::vector<SurfaceSample> mesh;
    if (!(theta_max > 0.0)) {
        return mesh;
    }
    const double edge_sec = sec(0.5 * theta_max);
    const double edge_ds_dtheta = focal_length * edge_sec * edge_sec * edge_sec;
    const double edge_rho = 2.0 * focal_length * std::tan(0.5 * theta_max);

    const auto n_theta = static_cast<std::size_t>(
        std::max(1.0, std::ceil(theta_max * edge_ds_dtheta * samples_per_wavelength / wavelength)));
    const auto n_phi = static_cast<std::size_t>(
        std::max(1.0, std::ceil(constants::two_pi * edge_rho * samples_per_wavelength / wavelength)));

    const double d_theta = theta_max / static_cast<double>(n_theta);
    const double d_phi = constants::two_pi / static_cast<double>(n_phi);

    mesh.reserve(n_theta * n_phi);
    for (std::size_t it = 0; it < n_theta; ++it) {
        const double theta = (static_cast<double>(it) + 0.5) * d_theta;
        const double dS = area_jacobian(theta, focal_length) * d_theta * d_phi;
        for (std::size_t ip = 0; ip < n_phi; ++ip) {
            const double phi = (static_cast<double>(ip) + 0.5) * d_phi;
            mesh.push_back(make_sample(theta, phi, focal_length, dS, region));
        }
    }
    return mesh;
}

std::vector<SurfaceSample> mesh_reflector(const DishConfig& cfg, double samples_per_wavelength)
{
    return mesh_paraboloid(cfg.focal_length(), cfg.wavelength(), cfg.boundary_angle(),
                           samples_per_wavelength, Region::reflector);
}

int annulus_ring_count(const DishConfig& cfg)
{
    const double F = cfg.focal_length();
    const double width =
        meridian_arc_length(cfg.rim_angle(), F) - meridian_arc_length(cfg.boundary_angle(), F);
    return static_cast<int>(std::lround(width / (0.5 * cfg.wavelength())));
}

std::vector<UnitCell> tessellate_annulus(const DishConfig& cfg, int subdivisions)
{
    if (subdivisions < 1) {
        throw DomainError("tessellate_annulus: subdivisions must be >= 1");
    }
    const double F = cfg.focal_length();
    const double half_wave = 0.5 * cfg.wavelength();
    const double s_inner = meridian_arc_length(cfg.boundary_angle(), F);
    const double s_outer = meridian_arc_length(cfg.rim_angle(), F);

    std::vector<UnitCell> cells;
    const int n_rings = annulus_ring_count(cfg);
    if (n_rings < 1) {
        if (s_outer > s_inner) {
            std::clog << "warning: reflectarray annulus (" << (s_outer - s_inner)
                      << " m) is narrower than one unit cell; no cells generated\n";
        }
        return cells;
    }

    const double ring_width = (s_outer - s_inner) / n_rings;
    const double m = static_cast<double>(subdivisions);
    for (int ring = 0; ring < n_rings; ++ring) {
        const double theta_lo = theta_at_arc_length(s_inner + ring * ring_width, F);
        const double theta_hi = theta_at_arc_length(s_inner + (ring + 1) * ring_width, F);
        const double theta_c = 0.5 * (theta_lo + theta_hi);
        const double rho_c = surface_point(theta_c, 0.0, F).r * std::sin(theta_c);
        const int n_cells = std::max(1, static_cast<int>(std::lround(constants::two_pi * rho_c / half_wave)));
        const double d_phi = constants::two_pi / n_cells;
        const double sub_dtheta = (theta_hi - theta_lo) / m;
        const double sub_dphi = d_phi / m;

        for (int idx = 0; idx < n_cells; ++idx) {
            UnitCell cell;
            cell.ring = ring;
            cell.index_in_ring = idx;
            cell.a = half_wave;
            cell.b = half_wave;
            cell.meridian_width = ring_width;
            cell.azimuth_width = rho_c * d_phi;
            cell.theta_li = 0.5 * theta_c;

            const double phi_lo = idx * d_phi;
            double area = 0.0;
            cell.subsamples.reserve(static_cast<std::size_t>(subdivisions * subdivisions));
            for (int it = 0; it < subdivisions; ++it) {
                const double theta = theta_lo + (it + 0.5) * sub_dtheta;
                const double dS = area_jacobian(theta, F) * sub_dtheta * sub_dphi;
                for (int ip = 0; ip < subdivisions; ++ip) {
                    const double phi = phi_lo + (ip + 0.5) * sub_dphi;
                    cell.subsamples.push_back(make_sample(theta, phi, F, dS, Region::reflectarray));
                    area += dS;
                }
            }
            cell.center = make_sample(theta_c, phi_lo + 0.5 * d_phi, F, area, Region::reflectarray);
            cells.push_back(std::move(cell));
        }
    }
    return cells;
}

}  // namespace rimnull
