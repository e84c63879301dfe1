// SPDX-License-Identifier: Apache-2.0
#include "rimnull/nullsteer.hpp"

#include <algorithm>
#include <cmath>

#include "rimnull/errors.hpp"
#include "rimnull/parallel.hpp"

namespace rimnull {

ContributionTable::ContributionTable(std::size_t n_cells, std::vector<SwitchState> states)
    : n_cells_(n_cells), states_(std::move(states)), values_(n_cells * states_.size())
{
    if (states_.empty()) {
        throw ContractError("ContributionTable: state set must not be empty");
    }
}

cdouble ContributionTable::value(std::size_t cell, SwitchState state) const
{
    const auto it = std::find(states_.begin(), states_.end(), state);
    if (it == states_.end()) {
        throw ContractError("ContributionTable: state not tabulated");
    }
    return at(cell, static_cast<std::size_t>(it - states_.begin()));
}

cdouble reflector_field_at(const CurrentSheet& reflector_currents, Polarization pol, const Direction& dir,
                           int workers)
{
    return ludwig_field(radiate(reflector_currents, dir, workers), dir, pol).co;
}

cdouble reflector_field_at(std::span<const SurfaceSample> mesh, const FeedConfig& feed, const Direction& dir,
                           int workers)
{
    return reflector_field_at(sample_currents(mesh, ReflectionDyad::pec(), feed), feed.polarization, dir,
                              workers);
}

cdouble cell_contribution(const UnitCell& cell, const ReflectionDyad& dyad, const FeedConfig& feed,
                          const Direction& dir)
{
    const CurrentSheet sheet = sample_currents(cell.subsamples, dyad, feed);
    return ludwig_field(radiate(sheet, dir), dir, feed.polarization).co;
}

ContributionTable compute_contributions(const ImsModel& model, const NullSpec& null, int workers)
{
    const auto cells = model.cells();
    ContributionTable table(cells.size(), null.state_set);
    const auto states = table.states();
    parallel_for(cells.size(), workers, [&](std::size_t i) {
        for (std::size_t s = 0; s < states.size(); ++s) {
            table.at(i, s) =
                cell_contribution(cells[i], model.dyad_for(cells[i], states[s]), model.feed(), null.direction);
        }
    });
    return table;
}

SwitchConfig SerialSearch::select(const ContributionTable& table, cdouble t0) const
{
    const auto states = table.states();
    SwitchConfig out;
    out.states.reserve(table.cell_count());
    out.history.reserve(table.cell_count());
    cdouble total = t0;
    for (std::size_t i = 0; i < table.cell_count(); ++i) {
        std::size_t best = 0;
        double best_mag = std::abs(total + table.at(i, 0));
        for (std::size_t s = 1; s < states.size(); ++s) {
            const double mag = std::abs(total + table.at(i, s));
            if (mag < best_mag || (mag == best_mag && states[s] == SwitchState::off)) {
                best = s;
                best_mag = mag;
            }
        }
        total += table.at(i, best);
        out.states.push_back(states[best]);
        out.history.push_back(std::abs(total));
    }
    out.residual = total;
    return out;
}

SwitchConfig serial_search(const ContributionTable& table, cdouble t0) { return SerialSearch{}.select(table, t0); }

std::vector<ReflectionDyad> apply_states(const ImsModel& model, std::span<const SwitchState> states)
{
    const auto cells = model.cells();
    if (states.size() != cells.size()) {
        throw ContractError("apply_states: " + std::to_string(states.size()) + " states for " +
                            std::to_string(cells.size()) + " cells");
    }
    std::vector<ReflectionDyad> dyads;
    dyads.reserve(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) {
        dyads.push_back(model.dyad_for(cells[i], states[i]));
    }
    return dyads;
}

std::vector<ReflectionDyad> apply_states(const ImsModel& model, const SwitchConfig& config)
{
    return apply_states(model, config.states);
}

NullDesign design_null(const ImsModel& model, const NullSpec& null, const StateSelector& selector, int workers)
{
    if (null.state_set.empty()) {
        throw ContractError("design_null: empty state set");
    }
    NullDesign design;
    design.null = null;
    design.t0 = reflector_field_at(model.reflector_currents(), model.feed().polarization, null.direction,
                                   workers);
    design.contributions = compute_contributions(model, null, workers);
    design.config = selector.select(design.contributions, design.t0);
    return design;
}

NullDesign design_null(const ImsModel& model, const NullSpec& null, int workers)
{
    return design_null(model, null, SerialSearch{}, workers);
}

}  // namespace rimnull
