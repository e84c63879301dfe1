// SPDX-License-Identifier: Apache-2.0
#include "rimnull/parallel.hpp"

#include <cstdlib>
#include <string>
#include <thread>

namespace rimnull {

int default_workers()
{
    if (const char* env = std::getenv("RIMNULL_WORKERS")) {
        try {
            const int w = std::stoi(env);
            if (w > 0) {
                return w;
            }
        } catch (const std::exception&) {
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace rimnull
