// SPDX-License-Identifier: Apache-2.0
//
// Assembled interference-mitigation system: reflector mesh, reflectarray
// cells, feed and dyad source, with PO currents cached for the fixed parts.
#pragma once

#include <span>
#include <vector>

#include "rimnull/farfield.hpp"
#include "rimnull/feed.hpp"
#include "rimnull/geometry.hpp"
#include "rimnull/scattering.hpp"

namespace rimnull {

struct MeshOptions {
    double samples_per_wavelength = 4.0;
    int cell_subdivisions = 3;
};

/// PO currents of samples that all reflect with the same dyad.
CurrentSheet sample_currents(std::span<const SurfaceSample> samples, const ReflectionDyad& dyad,
                             const FeedConfig& feed);

/// Annulus currents with one dyad per cell (cells and dyads index-aligned).
CurrentSheet annulus_currents(std::span<const UnitCell> cells, std::span<const ReflectionDyad> dyads,
                              const FeedConfig& feed);

class ImsModel {
public:
    ImsModel(const DishConfig& dish, DyadSource dyads, MeshOptions mesh = {},
             cdouble feed_amplitude = {1.0, 0.0});

    const DishConfig& dish() const { return dish_; }
    const FeedConfig& feed() const { return feed_; }
    const DyadSource& dyads() const { return dyads_; }
    const MeshOptions& mesh_options() const { return mesh_; }
    std::span<const SurfaceSample> reflector_mesh() const { return reflector_; }
    std::span<const UnitCell> cells() const { return cells_; }

    /// PEC currents over the reflector portion, computed once.
    const CurrentSheet& reflector_currents() const { return reflector_currents_; }

    /// Intercepted feed power over the full dish (rim angle theta_0).
    double p_rad() const;

    ReflectionDyad dyad_for(const UnitCell& cell, SwitchState state) const;
    std::vector<ReflectionDyad> uniform_dyads(const ReflectionDyad& dyad) const;

    /// Reflector plus annulus currents for the given per-cell dyads.
    CurrentSheet currents(std::span<const ReflectionDyad> cell_dyads) const;

private:
    DishConfig dish_;
    FeedConfig feed_;
    DyadSource dyads_;
    MeshOptions mesh_;
    std::vector<SurfaceSample> reflector_;
    std::vector<UnitCell> cells_;
    CurrentSheet reflector_currents_;
};

}  // namespace rimnull
