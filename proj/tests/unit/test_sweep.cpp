// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "rimnull/sweep.hpp"
#include "support.hpp"

using namespace rimnull;

namespace {

const ImsModel& model()
{
    static const ImsModel m(test::small_dish(), DyadSource::ruc_table2());
    return m;
}

const CurrentSheet& reference()
{
    static const ImsModel solid(test::small_dish(3.0), DyadSource::pec());
    return solid.reflector_currents();
}

std::vector<Direction> grid()
{
    const std::vector<double> theta{deg_to_rad(6.0), deg_to_rad(8.0)};
    const std::vector<double> phi{0.0, deg_to_rad(45.0), deg_to_rad(90.0)};
    return null_grid(theta, phi);
}

}  // namespace

TEST_CASE("null grid is theta-major")
{
    const auto g = grid();
    REQUIRE(g.size() == 6);
    CHECK(g[0].theta_z == g[2].theta_z);
    CHECK(g[2].phi == doctest::Approx(deg_to_rad(90.0)));
    CHECK(g[3].theta_z == doctest::Approx(deg_to_rad(8.0)));
    CHECK(g[3].phi == 0.0);
    CHECK(null_grid(std::vector<double>{}, std::vector<double>{1.0}).empty());
}

TEST_CASE("sweep points equal standalone evaluations, in grid order, for any worker count")
{
    const auto g = grid();
    const auto one = run_sweep(model(), reference(), g, 1);
    const auto four = run_sweep(model(), reference(), g, 4);
    REQUIRE(one.records.size() == g.size());
    REQUIRE(four.records.size() == g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        CHECK(one.records[i].index == i);
        CHECK(one.records[i].ok);
        CHECK(one.records[i] == four.records[i]);
        CHECK(one.records[i] == evaluate_sweep_point(model(), reference(), i, g[i]));
        CHECK(one.records[i].null_depth_db > 10.0);
        CHECK(one.records[i].e_r > 0.98);
        CHECK(one.wall_seconds[i] >= 0.0);
    }
}

TEST_CASE("resume replays completed points and computes only the rest")
{
    const auto g = grid();
    const auto full = run_sweep(model(), reference(), g, 1);
    std::map<std::size_t, SweepRecord> done{{0, full.records[0]}, {1, full.records[1]}, {4, full.records[4]}};

    std::vector<SweepRecord> seen;
    std::vector<bool> resumed;
    run_sweep(model(), reference(), g, 2,
              [&](const SweepRecord& r, double, bool was_resumed) {
                  seen.push_back(r);
                  resumed.push_back(was_resumed);
              },
              done);
    REQUIRE(seen.size() == g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        CHECK(seen[i] == full.records[i]);
        CHECK(resumed[i] == (done.count(i) == 1));
    }
}

TEST_CASE("a failing point is recorded and the sweep continues")
{
    // Table without an 'on' entry: every design lookup fails.
    std::vector<DyadEntry> only_off{{SwitchState::off, 1.5e9, deg_to_rad(20.0), ReflectionDyad::pec()}};
    DishConfig dish = test::small_dish();
    const ImsModel broken(dish, DyadSource::user_table(only_off));
    const auto g = grid();
    const auto out = run_sweep(broken, reference(), std::span(g).subspan(0, 2), 1);
    REQUIRE(out.records.size() == 2);
    for (const auto& r : out.records) {
        CHECK_FALSE(r.ok);
        CHECK(r.error.find("no reflection dyad") != std::string::npos);
    }
}
