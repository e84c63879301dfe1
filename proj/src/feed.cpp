// SPDX-License-Identifier: Apache-2.0
#include "rimnull/feed.hpp"

#include <cmath>

#include "rimnull/errors.hpp"

namespace rimnull {

FeedConfig FeedConfig::from(const DishConfig& cfg, cdouble amplitude)
{
    FeedConfig feed;
    feed.amplitude = amplitude;
    feed.exponent = cfg.feed_exponent();
    feed.polarization = cfg.polarization();
    feed.wavenumber = cfg.wavenumber();
    return feed;
}

Vec3 spherical_r_hat(double theta, double phi)
{
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

Vec3 spherical_theta_hat(double theta, double phi)
{
    return {std::cos(theta) * std::cos(phi), std::cos(theta) * std::sin(phi), -std::sin(theta)};
}

Vec3 spherical_phi_hat(double /*theta*/, double phi) { return {-std::sin(phi), std::cos(phi), 0.0}; }

CVec3 incident_field(const FeedConfig& feed, double theta_p, double phi_p, double r_i)
{
    const double st = std::sin(theta_p);
    const double sp = std::sin(phi_p);
    const double cp = std::cos(phi_p);

    double a_theta = 0.0;
    double a_phi = 0.0;
    double divisor_sq = 0.0;
    if (feed.polarization == Polarization::y) {
        a_theta = sp * std::cos(theta_p);
        a_phi = cp;
        divisor_sq = 1.0 - st * st * sp * sp;
    } else {
        a_theta = cp * std::cos(theta_p);
        a_phi = -sp;
        divisor_sq = 1.0 - st * st * cp * cp;
    }
    if (!(divisor_sq > 0.0)) {
        throw DomainError("incident_field: polarization divisor vanishes at this source angle");
    }
    const double ct = std::cos(theta_p);
    const double pattern = std::pow(std::max(ct, 0.0), feed.exponent) / std::sqrt(divisor_sq);
    const cdouble scale = feed.amplitude * std::polar(1.0 / r_i, -feed.wavenumber * r_i) * pattern;

    const Vec3 unit = a_theta * spherical_theta_hat(theta_p, phi_p) + a_phi * spherical_phi_hat(theta_p, phi_p);
    return unit.cast<cdouble>() * scale;
}

CVec3 incident_field(const FeedConfig& feed, const SurfaceSample& sample)
{
    return incident_field(feed, sample.theta_p, sample.phi_p, sample.r_i);
}

CVec3 feed_far_field(const FeedConfig& feed, double theta, double phi)
{
    if (std::cos(theta) <= 0.0) {
        return CVec3::Zero();
    }
    return incident_field(feed, theta, phi, 1.0) * std::polar(1.0, feed.wavenumber);
}

double feed_power(const FeedConfig& feed, double theta0)
{
    const double q = feed.exponent;
    const double e0 = std::norm(feed.amplitude);
    const double c = std::max(std::cos(theta0), 0.0);
    return e0 * constants::two_pi / (2.0 * constants::eta0 * (2.0 * q + 1.0)) *
           (1.0 - std::pow(c, 2.0 * q + 1.0));
}

}  // namespace rimnull
