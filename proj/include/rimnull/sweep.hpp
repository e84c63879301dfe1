// SPDX-License-Identifier: Apache-2.0
//
// Parameter sweeps over commanded null directions. Each grid point is an
// independent serial-search design followed by pattern probes; points are
// distributed over workers and emitted in grid order by a single writer.
#pragma once

#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "rimnull/farfield.hpp"
#include "rimnull/ims.hpp"

namespace rimnull {

struct SweepRecord {
    std::size_t index = 0;
    Direction null;
    bool ok = false;
    std::string error;                 ///< failure message when !ok
    double reference_db = 0.0;         ///< solid-dish D_co at the null
    double ims_db = 0.0;               ///< designed D_co at the null
    double null_depth_db = 0.0;        ///< reference_db - ims_db
    double peak_db = 0.0;              ///< designed peak D_co
    Direction peak;
    double e_r = 0.0;
    double residual = 0.0;             ///< |co-pol total| at the null after selection
};

bool operator==(const SweepRecord& a, const SweepRecord& b);

/// Cartesian product of boresight offsets and azimuths (radians), theta-major.
std::vector<Direction> null_grid(std::span<const double> theta_z, std::span<const double> phi);

/// One grid point. `reference` holds the PEC currents of the unmodified dish.
/// Numerical failures are captured in the record rather than thrown.
SweepRecord evaluate_sweep_point(const ImsModel& model, const CurrentSheet& reference, std::size_t index,
                                 const Direction& null, int workers = 1);

using SweepSink = std::function<void(const SweepRecord& record, double wall_seconds, bool resumed)>;

/// Runs every grid point not present in `completed`, calling `sink` once per
/// point in grid order (completed points are replayed with resumed = true).
/// Output is independent of the worker count.
void run_sweep(const ImsModel& model, const CurrentSheet& reference, std::span<const Direction> grid,
               int workers, const SweepSink& sink, const std::map<std::size_t, SweepRecord>& completed = {});

/// Collecting convenience wrapper.
struct SweepGrid {
    std::vector<SweepRecord> records;
    std::vector<double> wall_seconds;
};

SweepGrid run_sweep(const ImsModel& model, const CurrentSheet& reference, std::span<const Direction> grid,
                    int workers);

}  // namespace rimnull
