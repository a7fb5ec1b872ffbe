#include <doctest.h>

#include <random>

#include "specdisc/measure.hpp"
#include "specdisc/rearrange.hpp"
#include "specdisc/util.hpp"

using namespace specdisc;

namespace {

Box interval(double a, double b) { return Box{{a}, {b}}; }

}  // namespace

TEST_CASE("build_grid: uniform unit interval") {
    const auto space = build_grid(interval(0.0, 1.0), {4}, 1.0);
    REQUIRE(space.size() == 4);
    for (const auto& a : space.atoms()) CHECK(a.mass == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(space.total_mass() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("build_grid: 2-d total mass") {
    const auto space = build_grid(Box{{0.0, 0.0}, {1.0, 1.0}}, {2, 2}, 1.0);
    CHECK(space.size() == 4);
    CHECK(space.total_mass() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("build_grid: midpoint-sampled density") {
    const auto space =
        build_grid(interval(0.0, 3.0), {3}, [](const std::vector<double>& c) { return c[0]; });
    REQUIRE(space.size() == 3);
    CHECK(space.atoms()[0].mass == doctest::Approx(0.5));
    CHECK(space.atoms()[1].mass == doctest::Approx(1.5));
    CHECK(space.atoms()[2].mass == doctest::Approx(2.5));
}

TEST_CASE("build_grid: error cases") {
    CHECK_THROWS_AS(build_grid(interval(1.0, 1.0), {4}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(build_grid(interval(0.0, 1.0), {4}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(build_grid(interval(0.0, 1.0), {0}, 1.0), std::invalid_argument);
}

TEST_CASE("refine: splits atoms into equal-mass children") {
    const auto space = build_grid(interval(0.0, 1.0), {1}, 1.0);
    const auto fine = refine(space, 2);
    REQUIRE(fine.size() == 2);
    CHECK(fine.atoms()[0].mass == doctest::Approx(0.5));
    CHECK(fine.total_mass() == doctest::Approx(space.total_mass()).epsilon(1e-14));
}

TEST_CASE("refine: conserves mass and counts") {
    const auto space =
        build_grid(interval(0.0, 2.0), {4}, [](const std::vector<double>& c) { return 1.0 + c[0]; });
    const auto fine = refine(space, 3);
    CHECK(fine.size() == 12);
    CHECK(fine.total_mass() == doctest::Approx(space.total_mass()).epsilon(1e-14));
    CHECK_THROWS_AS(refine(restrict_space(space, interval(0.0, 1.0)).space, 2), std::invalid_argument);
}

TEST_CASE("refine: distribution of a piecewise-constant field is unchanged") {
    const auto space = build_grid(Box{{0.0, 0.0}, {1.0, 2.0}}, {3, 4}, 1.0);
    const auto field = ScalarField::from_function(
        space, [](const std::vector<double>& c) { return std::floor(3.0 * c[0]) + 1.0; });
    const auto fine = refine(space, 2);
    std::vector<double> fine_values(fine.size());
    for (std::size_t i = 0; i < fine.size(); ++i)
        fine_values[i] = field[refine_parent_index(space, 2, i)];
    const auto fine_field = ScalarField::from_values(fine, fine_values);

    DistributionProfile coarse(field, space);
    DistributionProfile refined(fine_field, fine);
    for (double t : {0.3, 0.9, 1.1, 1.7}) {
        CHECK(coarse.nonincreasing_value(t) == refined.nonincreasing_value(t));
        CHECK(coarse.nondecreasing_value(t) == refined.nondecreasing_value(t));
    }
}

TEST_CASE("restrict: identity and halves") {
    const auto space = build_grid(interval(0.0, 1.0), {4}, 1.0);
    CHECK(restrict_space(space, interval(0.0, 1.0)).space.size() == 4);
    const auto left = restrict_space(space, interval(0.0, 0.5));
    CHECK(left.space.size() == 2);

    const auto plane = build_grid(Box{{0.0, 0.0}, {1.0, 1.0}}, {8, 8}, 1.0);
    const auto half = restrict_space(plane, Box{{0.0, 0.0}, {0.5, 1.0}});
    CHECK(half.space.total_mass() == doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("restrict: empty restriction is an error") {
    const auto space = build_grid(interval(0.0, 1.0), {4}, 1.0);
    CHECK_THROWS_AS(restrict_space(space, interval(2.0, 3.0)), std::invalid_argument);
}

TEST_CASE("mass additivity over random partitions") {
    std::mt19937_64 rng(911);
    std::uniform_real_distribution<double> uni(0.1, 2.0);
    for (int trial = 0; trial < 25; ++trial) {
        const auto space = build_grid(
            interval(0.0, 1.0), {64}, [&](const std::vector<double>&) { return uni(rng); });
        const double cut1 = 0.25, cut2 = 0.75;
        const auto a = restrict_space(space, interval(0.0, cut1));
        const auto b = restrict_space(space, interval(cut1, cut2));
        const auto c = restrict_space(space, interval(cut2, 1.0));
        const double sum = a.space.total_mass() + b.space.total_mass() + c.space.total_mass();
        CHECK(std::abs(sum - space.total_mass()) <= 1e-12 * space.total_mass());
    }
}

TEST_CASE("atoms must have positive mass and unique ids") {
    CHECK_THROWS_AS(WeightedSpace({Atom{0, 0.0, 0.0}}), std::invalid_argument);
    CHECK_THROWS_AS(WeightedSpace({Atom{0, 1.0, 0.0}, Atom{0, 1.0, 0.0}}), std::invalid_argument);
    CHECK_THROWS_AS(WeightedSpace({}), std::invalid_argument);
}
