// SPDX-License-Identifier: Apache-2.0
//
// Prime-focus paraboloid geometry. The feed sits at the global origin and the
// dish opens toward -z, so the vertex is at (0, 0, F) and reflected rays leave
// along -z_g. Source angles (theta', phi') are the usual spherical angles of
// the focus-to-surface ray.
#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace rimnull {

using Vec3 = Eigen::Vector3d;

enum class Polarization { x, y };
enum class Region { reflector, reflectarray };

struct SubtendedAngles {
    double rim;       ///< theta_0, full dish edge, radians
    double boundary;  ///< theta_1, reflector/reflectarray boundary, radians
};

/// Half-angles subtended at the focus by the full dish (D) and reflector portion (D0).
SubtendedAngles subtended_angles(double diameter, double inner_diameter, double focal_length);

/// Validated system geometry plus operating point. Derived quantities are
/// computed once at construction.
class DishConfig {
public:
    DishConfig(double diameter, double inner_diameter, double focal_length, double frequency,
               double feed_exponent = 1.14, Polarization polarization = Polarization::y);

    double diameter() const { return diameter_; }
    double inner_diameter() const { return inner_diameter_; }
    double focal_length() const { return focal_length_; }
    double frequency() const { return frequency_; }
    double feed_exponent() const { return feed_exponent_; }
    Polarization polarization() const { return polarization_; }

    double wavelength() const { return wavelength_; }
    double wavenumber() const;
    double rim_angle() const { return angles_.rim; }
    double boundary_angle() const { return angles_.boundary; }

    /// Same dish with the reflectarray annulus removed (D0 = D).
    DishConfig solid() const;

private:
    double diameter_;
    double inner_diameter_;
    double focal_length_;
    double frequency_;
    double feed_exponent_;
    Polarization polarization_;
    double wavelength_;
    SubtendedAngles angles_;
};

struct SurfacePoint {
    double r;       ///< focus-to-surface distance F sec^2(theta'/2)
    Vec3 position;  ///< global Cartesian
};

SurfacePoint surface_point(double theta_p, double phi_p, double focal_length);

/// Right-handed tangent frame with z = inward unit normal (pointing at the focus side).
struct LocalFrame {
    Vec3 x;
    Vec3 y;
    Vec3 z;
};

/// Frame with the incident ray r-hat in the local x-z plane. At the vertex the
/// plane of incidence is undefined and y is pinned to y_g.
LocalFrame local_frame(double theta_p, double phi_p);

struct SurfaceSample {
    double theta_p = 0.0;
    double phi_p = 0.0;
    double r_i = 0.0;
    Vec3 position = Vec3::Zero();
    LocalFrame frame{Vec3::UnitX(), Vec3::UnitY(), Vec3::UnitZ()};
    double dS = 0.0;
    Region region = Region::reflector;

    const Vec3& n_hat() const { return frame.z; }
    Vec3 r_hat() const { return position / r_i; }
};

SurfaceSample make_sample(double theta_p, double phi_p, double focal_length, double dS,
                          Region region);

/// Surface area element per unit (dtheta' dphi'): r^2 sin(theta') sec(theta'/2).
double area_jacobian(double theta_p, double focal_length);

/// Meridian arc length from the vertex to theta' (closed form of the integral of r sec(theta'/2)).
double meridian_arc_length(double theta_p, double focal_length);

/// Inverse of meridian_arc_length on [0, pi).
double theta_at_arc_length(double arc, double focal_length);

/// Midpoint-rule quadrature grid over 0 <= theta' <= theta_max, uniform in
/// (theta', phi'). Spacing along both surface directions at the outer edge is
/// at most wavelength / samples_per_wavelength. Empty when theta_max <= 0.
std::vector<SurfaceSample> mesh_paraboloid(double focal_length, double wavelength,
                                           double theta_max, double samples_per_wavelength,
                                           Region region = Region::reflector);

/// Reflector portion (0 <= theta' <= theta_1) of the dish.
std::vector<SurfaceSample> mesh_reflector(const DishConfig& cfg, double samples_per_wavelength = 4.0);

struct UnitCell {
    int ring = 0;
    int index_in_ring = 0;
    SurfaceSample center;
    double a = 0.0;              ///< nominal azimuthal cell size, lambda/2
    double b = 0.0;              ///< nominal meridian cell size, lambda/2
    double meridian_width = 0.0; ///< actual arc length spanned along the meridian
    double azimuth_width = 0.0;  ///< actual arc length spanned in azimuth at the center
    double theta_li = 0.0;       ///< local incidence polar angle, theta'_center / 2
    std::vector<SurfaceSample> subsamples;
};

/// Ring count for the annulus: round(arc length / b), zero when the annulus is
/// narrower than half a cell.
int annulus_ring_count(const DishConfig& cfg);

/// Splits the reflectarray annulus into rings of ~lambda/2 along the meridian and
/// cells of ~lambda/2 in azimuth. Cells are ordered innermost ring first, then by
/// increasing phi'. Each cell carries a subdivisions x subdivisions midpoint grid.
std::vector<UnitCell> tessellate_annulus(const DishConfig& cfg, int subdivisions = 3);

}  // namespace rimnull
