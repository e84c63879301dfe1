// SPDX-License-Identifier: Apache-2.0
//
// Per-cell switch-state selection that drives the co-polarized far field to
// zero in one commanded direction.
#pragma once

#include <memory>
#include <span>
#include <vector>

#include "rimnull/farfield.hpp"
#include "rimnull/ims.hpp"
#include "rimnull/scattering.hpp"

namespace rimnull {

struct NullSpec {
    Direction direction;
    std::vector<SwitchState> state_set{SwitchState::off, SwitchState::on};
};

struct SwitchConfig {
    std::vector<SwitchState> states;   ///< one per cell, tessellation order
    cdouble residual{0.0, 0.0};        ///< total co-pol field at the null after selection
    std::vector<double> history;       ///< |running total| after each cell
};

/// Co-pol far field of the cells' candidate states in one direction, row-major
/// [cell][state], states in NullSpec::state_set order.
class ContributionTable {
public:
    ContributionTable() = default;
    ContributionTable(std::size_t n_cells, std::vector<SwitchState> states);

    std::size_t cell_count() const { return n_cells_; }
    std::span<const SwitchState> states() const { return states_; }
    cdouble& at(std::size_t cell, std::size_t state) { return values_[cell * states_.size() + state]; }
    cdouble at(std::size_t cell, std::size_t state) const { return values_[cell * states_.size() + state]; }
    /// Contribution of `cell` when set to `state`; throws if the state is not tabulated.
    cdouble value(std::size_t cell, SwitchState state) const;

private:
    std::size_t n_cells_ = 0;
    std::vector<SwitchState> states_;
    std::vector<cdouble> values_;
};

/// Co-pol field of the PEC reflector portion alone.
cdouble reflector_field_at(const CurrentSheet& reflector_currents, Polarization pol, const Direction& dir,
                           int workers = 1);
cdouble reflector_field_at(std::span<const SurfaceSample> mesh, const FeedConfig& feed, const Direction& dir,
                           int workers = 1);

/// Co-pol field radiated by one cell reflecting with `dyad`.
cdouble cell_contribution(const UnitCell& cell, const ReflectionDyad& dyad, const FeedConfig& feed,
                          const Direction& dir);

ContributionTable compute_contributions(const ImsModel& model, const NullSpec& null, int workers = 1);

/// Strategy for choosing one state per cell given the contribution table and
/// the reflector-only field T0.
class StateSelector {
public:
    virtual ~StateSelector() = default;
    virtual SwitchConfig select(const ContributionTable& table, cdouble t0) const = 0;
};

/// Single greedy pass in cell order: each cell takes the state minimizing
/// |T + c(s)|; exact ties go to `off`, otherwise to the earlier state in the set.
class SerialSearch final : public StateSelector {
public:
    SwitchConfig select(const ContributionTable& table, cdouble t0) const override;
};

SwitchConfig serial_search(const ContributionTable& table, cdouble t0);

/// Dyad assignment per cell for a switch configuration.
std::vector<ReflectionDyad> apply_states(const ImsModel& model, const SwitchConfig& config);
std::vector<ReflectionDyad> apply_states(const ImsModel& model, std::span<const SwitchState> states);

struct NullDesign {
    NullSpec null;
    cdouble t0;                       ///< reflector-only co-pol field at the null
    ContributionTable contributions;
    SwitchConfig config;
};

NullDesign design_null(const ImsModel& model, const NullSpec& null, const StateSelector& selector,
                       int workers = 1);
NullDesign design_null(const ImsModel& model, const NullSpec& null, int workers = 1);

}  // namespace rimnull
