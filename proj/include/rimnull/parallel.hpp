// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <exception>
#include <mutex>

namespace rimnull {

/// Worker count from RIMNULL_WORKERS, falling back to the hardware concurrency.
int default_workers();

/// Runs body(i) for i in [0, n) on up to `workers` threads. Each index is
/// handled by exactly one thread; ordering between indices is unspecified.
/// The first exception thrown by any body is rethrown after the loop.
template <class Body>
void parallel_for(std::size_t n, int workers, Body&& body)
{
    const auto count = static_cast<long long>(n);
    std::exception_ptr failure;
    std::mutex failure_mutex;
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers > 0 ? workers : 1) if (workers > 1)
    for (long long i = 0; i < count; ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) {
                failure = std::current_exception();
            }
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

}  // namespace rimnull
