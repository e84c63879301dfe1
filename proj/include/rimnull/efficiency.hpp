// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

#include "rimnull/ims.hpp"
#include "rimnull/scattering.hpp"

namespace rimnull {

/// Spillover x taper product assumed for the unmodified dish.
inline constexpr double kSpilloverTaperFullDish = 0.82;
/// Spillover x taper product once the outer rim is reallocated to the reflectarray.
inline constexpr double kSpilloverTaperReallocatedRim = 0.731;

struct ReflectionSample {
    CVec2 incident;  ///< (TM, TE) components of the incident field
    ReflectionDyad dyad;
    double weight = 1.0;
};

/// sum w |R E|^2 / sum w |E|^2. Throws DomainError when the denominator vanishes.
double radiation_efficiency(std::span<const ReflectionSample> samples);

/// Reflector samples (dyad -I) followed by every cell subsample with its cell's dyad.
std::vector<ReflectionSample> reflection_samples(const ImsModel& model,
                                                 std::span<const ReflectionDyad> cell_dyads);

struct EfficiencyReport {
    double e_r = 1.0;
    double eta_s_eta_t = kSpilloverTaperFullDish;
    double eta_ap = kSpilloverTaperFullDish;
    double gain_db = 0.0;
    double area = 0.0;  ///< physical aperture area pi (D/2)^2, m^2
};

/// 10 log10(e_r eta_s_eta_t 4 pi A / lambda^2); -inf when e_r is zero.
double gain_db(double e_r, double eta_s_eta_t, double area, double wavelength);

EfficiencyReport efficiency_report(double e_r, double eta_s_eta_t, double diameter, double wavelength);

}  // namespace rimnull
