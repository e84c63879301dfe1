// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include "rimnull/constants.hpp"
#include "rimnull/geometry.hpp"

namespace rimnull {

using CVec3 = Eigen::Vector3cd;

/// Raised-cosine (cos^q) feed at the focus.
struct FeedConfig {
    cdouble amplitude{1.0, 0.0};  ///< E0, volts
    double exponent = 1.14;       ///< q
    Polarization polarization = Polarization::y;
    double wavenumber = 0.0;      ///< k = 2 pi / lambda0, rad/m

    static FeedConfig from(const DishConfig& cfg, cdouble amplitude = {1.0, 0.0});
};

Vec3 spherical_r_hat(double theta, double phi);
Vec3 spherical_theta_hat(double theta, double phi);
Vec3 spherical_phi_hat(double theta, double phi);

/// Incident electric field of the feed at a dish point, global Cartesian, V/m.
/// The polarization vector is the unit transverse projection of y_hat
/// (theta_hat cos theta' sin phi' + phi_hat cos phi') / sqrt(1 - sin^2 theta' sin^2 phi'),
/// or of x_hat for x polarization. Zero behind the feed (theta' > 90 deg).
CVec3 incident_field(const FeedConfig& feed, double theta_p, double phi_p, double r_i);
CVec3 incident_field(const FeedConfig& feed, const SurfaceSample& sample);

/// Far-zone pattern of the feed alone, r e^{jkr} E, in the same convention as
/// the radiation integral.
CVec3 feed_far_field(const FeedConfig& feed, double theta, double phi);

/// Feed power intercepted by a dish of rim angle theta0, closed form
/// |E0|^2 2pi / (2 eta0 (2q+1)) (1 - cos^(2q+1) theta0).
double feed_power(const FeedConfig& feed, double theta0);

}  // namespace rimnull
