// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "rimnull/feed.hpp"
#include "rimnull/geometry.hpp"

namespace rimnull {

/// Observation direction measured from the reflector axis (-z_g).
struct Direction {
    double theta_z = 0.0;  ///< boresight offset, radians
    double phi = 0.0;      ///< azimuth, radians

    /// -cos(theta_z) z_g + sin(theta_z) (cos(phi) x_g + sin(phi) y_g)
    Vec3 unit() const;
    /// Polar angle in the global spherical system (pi - theta_z).
    double global_theta() const;

    static Direction degrees(double theta_z_deg, double phi_deg);
    /// Point of a planar cut; negative offsets land on the opposite half-plane (phi + pi).
    static Direction on_cut(double signed_theta_z, double phi_cut);
};

/// Structure-of-arrays list of current elements J dS at source points. The
/// wavenumber travels with the currents so radiate() needs no other context.
class CurrentSheet {
public:
    explicit CurrentSheet(double wavenumber) : k_(wavenumber) {}

    void add(const Vec3& position, const CVec3& current, double dS);
    void append(const CurrentSheet& other);
    void reserve(std::size_t n);

    std::size_t size() const { return x_.size(); }
    bool empty() const { return x_.empty(); }
    double wavenumber() const { return k_; }

    Vec3 position(std::size_t i) const { return {x_[i], y_[i], z_[i]}; }
    /// J dS of element i.
    CVec3 moment(std::size_t i) const;

private:
    friend struct RadiationKernel;

    double k_;
    std::vector<double> x_, y_, z_;
    std::vector<double> jxr_, jxi_, jyr_, jyi_, jzr_, jzi_;
};

/// Number of elements summed per compensated partial. Fixed so results do not
/// depend on how chunks are distributed over workers.
inline constexpr std::size_t kRadiateChunk = 4096;

/// r-normalized far field  (-j omega mu / 4 pi) sum J dS exp(j k u . r').
/// Chunks are Kahan-summed and combined in index order; the result is
/// bit-identical for any worker count. Throws on an empty sheet.
CVec3 radiate(const CurrentSheet& sheet, const Direction& dir, int workers = 1);
std::vector<CVec3> radiate(const CurrentSheet& sheet, std::span<const Direction> dirs, int workers = 1);

struct SphericalField {
    cdouble r;
    cdouble theta;
    cdouble phi;
};

/// Components on the global spherical basis at the observation direction.
SphericalField to_spherical(const CVec3& e, const Direction& dir);

struct LudwigField {
    cdouble co;
    cdouble cr;
};

/// Ludwig-3 co/cross decomposition with the lower-hemisphere theta-hat sign flip;
/// phi is the global azimuth of the observation direction.
LudwigField ludwig_copol(const SphericalField& e, double phi, Polarization pol);
LudwigField ludwig_field(const CVec3& e, const Direction& dir, Polarization pol);

/// 10 log10(4 pi |E|^2 / (2 eta0 P_rad)); -inf for a zero field.
double directivity_db(cdouble e, double p_rad);

struct ProbeValue {
    Direction direction;
    double d_co_db = 0.0;
    double d_cr_db = 0.0;
};

struct FarFieldSummary {
    double peak_db = -std::numeric_limits<double>::infinity();
    Direction peak;
    std::vector<ProbeValue> probes;
};

struct FarFieldResult {
    std::vector<Direction> directions;
    /// Signed offsets along a cut; equals theta_z for generic direction lists.
    std::vector<double> cut_angles;
    std::vector<cdouble> e_co;
    std::vector<cdouble> e_cr;
    std::vector<double> d_co_db;
    std::vector<double> d_cr_db;
    double p_rad = 0.0;
    FarFieldSummary summary;
};

FarFieldResult evaluate_pattern(const CurrentSheet& sheet, Polarization pol, double p_rad,
                                std::span<const Direction> dirs, int workers = 1);

/// Planar cut at azimuth phi_cut over signed offsets [theta_min, theta_max] (radians).
FarFieldResult pattern_cut(const CurrentSheet& sheet, Polarization pol, double p_rad, double phi_cut,
                           double theta_min, double theta_max, double step, int workers = 1);

struct PeakResult {
    Direction direction;
    double d_co_db = 0.0;
    int evaluations = 0;
};

/// Local maximum of D_co near boresight by compass search in direction-cosine space.
PeakResult find_peak(const CurrentSheet& sheet, Polarization pol, double p_rad, int workers = 1);

/// theta_z panels for hemisphere power integration: [edges[i], edges[i+1]]
/// split into panels of width at most widths[i], each with an 8-point
/// Gauss-Legendre rule. Azimuth uses an n_phi-point periodic midpoint rule.
struct PowerGrid {
    std::vector<double> edges;
    std::vector<double> widths;
    int n_phi = 16;

    /// 0 <= theta_z <= 90 deg, graded from the main beam outward.
    static PowerGrid forward_hemisphere();
    /// 90 <= theta_z <= 180 deg (behind the dish).
    static PowerGrid rear_hemisphere();
};

/// (1/2 eta0) integral of |E_theta|^2 + |E_phi|^2 over the grid's solid angle.
/// With `direct`, the feed's own far field is added before squaring, giving
/// the total (feed + scattered) field.
double integrate_power(const CurrentSheet& sheet, const PowerGrid& grid, int workers = 1,
                       const FeedConfig* direct = nullptr);

}  // namespace rimnull
