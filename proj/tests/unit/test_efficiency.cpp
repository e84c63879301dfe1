// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "rimnull/efficiency.hpp"
#include "rimnull/errors.hpp"
#include "rimnull/nullsteer.hpp"
#include "support.hpp"

using namespace rimnull;
using rimnull::test::uniform;

namespace {

std::vector<ReflectionSample> random_samples(std::size_t n, const ReflectionDyad& dyad)
{
    std::vector<ReflectionSample> out;
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back({CVec2(cdouble(uniform(-1, 1), uniform(-1, 1)), cdouble(uniform(-1, 1), uniform(-1, 1))),
                       dyad, uniform(0.1, 2.0)});
    }
    return out;
}

ReflectionDyad random_passive()
{
    ReflectionDyad d;
    for (int i = 0; i < 4; ++i) {
        d.m(i / 2, i % 2) = cdouble(uniform(-1, 1), uniform(-1, 1));
    }
    d.m /= d.largest_singular_value() * uniform(1.0, 4.0);
    return d;
}

}  // namespace

TEST_CASE("PEC everywhere gives e_r = 1")
{
    CHECK(radiation_efficiency(random_samples(50, ReflectionDyad::pec())) == doctest::Approx(1.0).epsilon(1e-14));
    const ImsModel m(test::small_dish(), DyadSource::pec());
    const auto samples = reflection_samples(m, m.uniform_dyads(ReflectionDyad::pec()));
    CHECK(samples.size() == m.reflector_mesh().size() + 9 * m.cells().size());
    CHECK(radiation_efficiency(samples) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("uniform 0.95 reflection gives 0.9025")
{
    CHECK(radiation_efficiency(random_samples(50, ReflectionDyad::scaled_identity(0.95))) ==
          doctest::Approx(0.9025).epsilon(1e-13));
}

TEST_CASE("e_r ignores a common rescaling of weights and fields")
{
    auto s = random_samples(40, random_passive());
    const double a = radiation_efficiency(s);
    for (auto& x : s) {
        x.weight *= 7.5;
        x.incident *= cdouble(0.0, 3.0);
    }
    CHECK(radiation_efficiency(s) == doctest::Approx(a).epsilon(1e-13));
}

TEST_CASE("e_r grows with the reflection magnitude")
{
    const auto base = random_samples(40, ReflectionDyad::pec());
    double prev = 0.0;
    for (double g : {0.1, 0.4, 0.7, 0.95, 1.0}) {
        auto s = base;
        for (auto& x : s) {
            x.dyad = ReflectionDyad::scaled_identity(g);
        }
        const double e = radiation_efficiency(s);
        CHECK(e > prev);
        prev = e;
    }
}

TEST_CASE("random passive dyads keep e_r in [0, 1]")
{
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<ReflectionSample> s;
        for (int i = 0; i < 20; ++i) {
            auto one = random_samples(1, random_passive());
            s.push_back(one.front());
        }
        const double e = radiation_efficiency(s);
        CHECK(e >= 0.0);
        CHECK(e <= 1.0 + 1e-12);
    }
}

TEST_CASE("vanishing incident power is a DomainError")
{
    std::vector<ReflectionSample> s{{CVec2::Zero(), ReflectionDyad::pec(), 1.0}};
    CHECK_THROWS_AS(radiation_efficiency(s), DomainError);
    CHECK_THROWS_AS(radiation_efficiency({}), DomainError);
}

TEST_CASE("designed annulus with the tabulated dyads stays above 0.985")
{
    const ImsModel m(test::small_dish(), DyadSource::ruc_table2());
    const auto design = design_null(m, NullSpec{Direction::degrees(6.0, 0.0)});
    const double e_r = radiation_efficiency(reflection_samples(m, apply_states(m, design.config)));
    CHECK(e_r >= 0.985);
    CHECK(e_r < 1.0);
    CHECK_THROWS_AS(reflection_samples(m, {}), ContractError);
}

TEST_CASE("gain examples")
{
    const double lambda = constants::speed_of_light / 1.5e9;
    const double area = constants::pi * 81.0;
    const double ideal = oracle::aperture_directivity_db(18.0, lambda);
    CHECK(gain_db(1.0, 1.0, area, lambda) == doctest::Approx(ideal).epsilon(1e-13));
    CHECK(gain_db(1.0, 0.82, area, lambda) == doctest::Approx(ideal + 10 * std::log10(0.82)).epsilon(1e-13));
    CHECK(gain_db(0.0, 0.82, area, lambda) == -std::numeric_limits<double>::infinity());
    CHECK_THROWS_AS(gain_db(1.0, 0.82, area, 0.0), DomainError);
    CHECK_THROWS_AS(gain_db(-0.1, 0.82, area, lambda), DomainError);

    const auto r = efficiency_report(0.99, kSpilloverTaperReallocatedRim, 18.0, lambda);
    CHECK(r.area == doctest::Approx(area));
    CHECK(r.eta_ap == doctest::Approx(0.99 * 0.731));
    CHECK(r.gain_db == doctest::Approx(gain_db(0.99, 0.731, area, lambda)));
}

TEST_CASE("aperture efficiency of the rim-reallocated design")
{
    CHECK(0.99 * kSpilloverTaperReallocatedRim == doctest::Approx(0.7237).epsilon(1e-4));
    CHECK(kSpilloverTaperFullDish == 0.82);
}
