// SPDX-License-Identifier: Apache-2.0
#include "rimnull/sweep.hpp"

#include <chrono>
#include <mutex>

#include "rimnull/efficiency.hpp"
#include "rimnull/nullsteer.hpp"
#include "rimnull/parallel.hpp"

namespace rimnull {

bool operator==(const SweepRecord& a, const SweepRecord& b)
{
    return a.index == b.index && a.null.theta_z == b.null.theta_z && a.null.phi == b.null.phi && a.ok == b.ok &&
           a.error == b.error && a.reference_db == b.reference_db && a.ims_db == b.ims_db &&
           a.null_depth_db == b.null_depth_db && a.peak_db == b.peak_db &&
           a.peak.theta_z == b.peak.theta_z && a.peak.phi == b.peak.phi && a.e_r == b.e_r &&
           a.residual == b.residual;
}

std::vector<Direction> null_grid(std::span<const double> theta_z, std::span<const double> phi)
{
    std::vector<Direction> grid;
    grid.reserve(theta_z.size() * phi.size());
    for (double t : theta_z) {
        for (double p : phi) {
            grid.push_back({t, p});
        }
    }
    return grid;
}

SweepRecord evaluate_sweep_point(const ImsModel& model, const CurrentSheet& reference, std::size_t index,
                                 const Direction& null, int workers)
{
    SweepRecord rec;
    rec.index = index;
    rec.null = null;
    try {
        const Polarization pol = model.feed().polarization;
        const double p_rad = model.p_rad();
        const NullDesign design = design_null(model, NullSpec{null}, workers);
        const auto dyads = apply_states(model, design.config);
        const CurrentSheet sheet = model.currents(dyads);

        rec.reference_db = directivity_db(ludwig_field(radiate(reference, null, workers), null, pol).co, p_rad);
        rec.ims_db = directivity_db(ludwig_field(radiate(sheet, null, workers), null, pol).co, p_rad);
        rec.null_depth_db = rec.reference_db - rec.ims_db;
        const PeakResult peak = find_peak(sheet, pol, p_rad, workers);
        rec.peak_db = peak.d_co_db;
        rec.peak = peak.direction;
        rec.e_r = radiation_efficiency(reflection_samples(model, dyads));
        rec.residual = std::abs(design.config.residual);
        rec.ok = true;
    } catch (const std::exception& e) {
        rec.ok = false;
        rec.error = e.what();
    }
    return rec;
}

void run_sweep(const ImsModel& model, const CurrentSheet& reference, std::span<const Direction> grid, int workers,
               const SweepSink& sink, const std::map<std::size_t, SweepRecord>& completed)
{
    struct Done {
        SweepRecord record;
        double seconds;
        bool resumed;
    };
    std::mutex mutex;
    std::map<std::size_t, Done> pending;
    std::size_t next_to_emit = 0;

    // Caller holds `mutex`.
    const auto flush = [&]() {
        for (auto it = pending.find(next_to_emit); it != pending.end(); it = pending.find(next_to_emit)) {
            sink(it->second.record, it->second.seconds, it->second.resumed);
            pending.erase(it);
            ++next_to_emit;
        }
    };

    std::vector<std::size_t> todo;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (const auto it = completed.find(i); it != completed.end()) {
            pending.emplace(i, Done{it->second, 0.0, true});
        } else {
            todo.push_back(i);
        }
    }
    {
        std::lock_guard lock(mutex);
        flush();
    }

    parallel_for(todo.size(), workers, [&](std::size_t t) {
        const std::size_t i = todo[t];
        const auto start = std::chrono::steady_clock::now();
        SweepRecord rec = evaluate_sweep_point(model, reference, i, grid[i], 1);
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::lock_guard lock(mutex);
        pending.emplace(i, Done{std::move(rec), seconds, false});
        flush();
    });

    std::lock_guard lock(mutex);
    flush();
}

SweepGrid run_sweep(const ImsModel& model, const CurrentSheet& reference, std::span<const Direction> grid,
                    int workers)
{
    SweepGrid out;
    run_sweep(model, reference, grid, workers, [&](const SweepRecord& rec, double seconds, bool) {
        out.records.push_back(rec);
        out.wall_seconds.push_back(seconds);
    });
    return out;
}

}  // namespace rimnull
