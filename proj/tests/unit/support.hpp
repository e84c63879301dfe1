// SPDX-License-Identifier: Apache-2.0
//
// Reduced-scale geometry shared by the unit tests: a 3 m dish at 1.5 GHz with
// the same F/D as the full-size system, so meshes stay around 10^4 samples.
#pragma once

#include <filesystem>
#include <random>
#include <string>

#include "rimnull/geometry.hpp"

namespace rimnull::test {

inline DishConfig small_dish(double inner_diameter = 2.7)
{
    return DishConfig(3.0, inner_diameter, 1.2, 1.5e9);
}

inline DishConfig full_dish(double inner_diameter = 18.0)
{
    return DishConfig(18.0, inner_diameter, 7.2, 1.5e9);
}

inline std::filesystem::path temp_dir(const std::string& name)
{
    const auto dir = std::filesystem::temp_directory_path() / ("rimnull_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

inline std::mt19937_64& rng()
{
    static std::mt19937_64 gen(20240915);
    return gen;
}

inline double uniform(double lo, double hi)
{
    return std::uniform_real_distribution<double>(lo, hi)(rng());
}

}  // namespace rimnull::test
