// SPDX-License-Identifier: Apache-2.0
#include "rimnull/ims.hpp"

#include "rimnull/errors.hpp"

namespace rimnull {

CurrentSheet sample_currents(std::span<const SurfaceSample> samples, const ReflectionDyad& dyad,
                             const FeedConfig& feed)
{
    CurrentSheet sheet(feed.wavenumber);
    sheet.reserve(samples.size());
    for (const auto& s : samples) {
        sheet.add(s.position, surface_current(s, dyad, incident_field(feed, s)), s.dS);
    }
    return sheet;
}

CurrentSheet annulus_currents(std::span<const UnitCell> cells, std::span<const ReflectionDyad> dyads,
                              const FeedConfig& feed)
{
    if (cells.size() != dyads.size()) {
        throw ContractError("annulus_currents: one dyad per cell required");
    }
    CurrentSheet sheet(feed.wavenumber);
    for (std::size_t i = 0; i < cells.size(); ++i) {
        for (const auto& s : cells[i].subsamples) {
            sheet.add(s.position, surface_current(s, dyads[i], incident_field(feed, s)), s.dS);
        }
    }
    return sheet;
}

ImsModel::ImsModel(const DishConfig& dish, DyadSource dyads, MeshOptions mesh, cdouble feed_amplitude)
    : dish_(dish),
      feed_(FeedConfig::from(dish, feed_amplitude)),
      dyads_(std::move(dyads)),
      mesh_(mesh),
      reflector_(mesh_reflector(dish, mesh.samples_per_wavelength)),
      cells_(tessellate_annulus(dish, mesh.cell_subdivisions)),
      reflector_currents_(sample_currents(reflector_, ReflectionDyad::pec(), feed_))
{
}

double ImsModel::p_rad() const { return feed_power(feed_, dish_.rim_angle()); }

ReflectionDyad ImsModel::dyad_for(const UnitCell& cell, SwitchState state) const
{
    return dyads_.lookup(state, cell.theta_li, dish_.frequency());
}

std::vector<ReflectionDyad> ImsModel::uniform_dyads(const ReflectionDyad& dyad) const
{
    return std::vector<ReflectionDyad>(cells_.size(), dyad);
}

CurrentSheet ImsModel::currents(std::span<const ReflectionDyad> cell_dyads) const
{
    CurrentSheet sheet = reflector_currents_;
    sheet.append(annulus_currents(cells_, cell_dyads, feed_));
    return sheet;
}

}  // namespace rimnull
