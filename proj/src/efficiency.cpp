// SPDX-License-Identifier: Apache-2.0
#include "rimnull/efficiency.hpp"

#include <cmath>
#include <limits>

#include "rimnull/errors.hpp"
#include "rimnull/summation.hpp"

namespace rimnull {

double radiation_efficiency(std::span<const ReflectionSample> samples)
{
    CompensatedSum after;
    CompensatedSum before;
    for (const auto& s : samples) {
        after.add(s.weight * (s.dyad.m * s.incident).squaredNorm());
        before.add(s.weight * s.incident.squaredNorm());
    }
    if (!(before.value() > 0.0)) {
        throw DomainError("radiation_efficiency: incident power sum is zero");
    }
    return after.value() / before.value();
}

std::vector<ReflectionSample> reflection_samples(const ImsModel& model,
                                                 std::span<const ReflectionDyad> cell_dyads)
{
    const auto cells = model.cells();
    if (cell_dyads.size() != cells.size()) {
        throw ContractError("reflection_samples: one dyad per cell required");
    }
    std::vector<ReflectionSample> out;
    out.reserve(model.reflector_mesh().size() + cells.size() * 9);
    const auto push = [&](const SurfaceSample& s, const ReflectionDyad& dyad) {
        const auto basis = local_polarization_basis(s);
        out.push_back({incident_components(basis, incident_field(model.feed(), s)), dyad, s.dS});
    };
    const ReflectionDyad pec = ReflectionDyad::pec();
    for (const auto& s : model.reflector_mesh()) {
        push(s, pec);
    }
    for (std::size_t i = 0; i < cells.size(); ++i) {
        for (const auto& s : cells[i].subsamples) {
            push(s, cell_dyads[i]);
        }
    }
    return out;
}

double gain_db(double e_r, double eta_s_eta_t, double area, double wavelength)
{
    if (!(wavelength > 0.0) || !(area > 0.0) || eta_s_eta_t < 0.0 || e_r < 0.0) {
        throw DomainError("gain: inputs must be positive");
    }
    const double g = e_r * eta_s_eta_t * 4.0 * constants::pi * area / (wavelength * wavelength);
    if (g == 0.0) {
        return -std::numeric_limits<double>::infinity();
    }
    return 10.0 * std::log10(g);
}

EfficiencyReport efficiency_report(double e_r, double eta_s_eta_t, double diameter, double wavelength)
{
    EfficiencyReport r;
    r.e_r = e_r;
    r.eta_s_eta_t = eta_s_eta_t;
    r.eta_ap = e_r * eta_s_eta_t;
    r.area = constants::pi * 0.25 * diameter * diameter;
    r.gain_db = gain_db(e_r, eta_s_eta_t, r.area, wavelength);
    return r;
}

}  // namespace rimnull
