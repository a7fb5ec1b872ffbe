#include <doctest.h>

#include <random>
#include <stdexcept>

#include "specdisc/measure.hpp"
#include "specdisc/optcover.hpp"

using namespace specdisc;

namespace {

struct Instance {
    WeightedSpace space;
    ScalarField field;
};

Instance make(std::vector<double> values, std::vector<double> masses) {
    std::vector<Atom> atoms;
    for (std::size_t i = 0; i < values.size(); ++i)
        atoms.push_back(Atom{static_cast<std::int64_t>(i), masses[i], 0.0});
    WeightedSpace space(std::move(atoms));
    ScalarField field = ScalarField::from_values(space, std::move(values));
    return {std::move(space), std::move(field)};
}

// Random 1-d grid with dyadic density and values; comparisons stay exact.
Instance random_grid_instance(std::mt19937_64& rng, std::int64_t max_cells) {
    std::uniform_int_distribution<std::int64_t> cells(1, max_cells);
    std::uniform_int_distribution<int> mass_num(1, 64);
    std::uniform_int_distribution<int> value_num(0, 64);
    const std::int64_t n = cells(rng);
    std::vector<double> masses(static_cast<std::size_t>(n)), values(static_cast<std::size_t>(n));
    for (auto& m : masses) m = mass_num(rng) / 64.0;
    for (auto& v : values) v = value_num(rng) / 64.0;
    std::vector<Atom> atoms;
    for (std::int64_t i = 0; i < n; ++i)
        atoms.push_back(Atom{i, masses[static_cast<std::size_t>(i)], 0.0});
    GridGeometry geom{Box{{0.0}, {static_cast<double>(n)}}, {n}};
    WeightedSpace space(std::move(atoms), std::move(geom));
    ScalarField field = ScalarField::from_values(space, std::move(values));
    return {std::move(space), std::move(field)};
}

}  // namespace

TEST_CASE("optimal cover on (1,2,4): fractional tie split") {
    auto ins = make({1, 2, 4}, {1, 1, 1});
    const auto sol = optimal_cover(ins.field, ins.space, 1.5);
    CHECK(sol.value == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(sol.achieved_mass == doctest::Approx(1.5).epsilon(1e-15));
    REQUIRE(sol.fractional.has_value());
    CHECK(sol.fractional->first == 1);
    CHECK(sol.fractional->second == doctest::Approx(0.5));
    CHECK(sol.level == 2.0);
    CHECK(sol.strict_mass == 1.0);
}

TEST_CASE("optimal cover: vanishing-mass limit and constant fields") {
    auto ins = make({1, 2, 4}, {1, 1, 1});
    const double tiny = 1e-9 * ins.space.total_mass();
    CHECK(optimal_cover(ins.field, ins.space, tiny).value ==
          doctest::Approx(tiny * 1.0).epsilon(1e-12));

    auto c = make({3, 3, 3}, {0.5, 1.0, 0.25});
    for (double t : {0.2, 0.9, 1.5})
        CHECK(optimal_cover(c.field, c.space, t).value == doctest::Approx(3.0 * t).epsilon(1e-13));
}

TEST_CASE("optimal cover: witness structure") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 300; ++trial) {
        auto ins = random_grid_instance(rng, 14);
        const double total = ins.space.total_mass();
        const double t = std::uniform_real_distribution<double>(0.05, 0.95)(rng) * total;
        const auto sol = optimal_cover(ins.field, ins.space, t);
        CHECK(sol.achieved_mass == doctest::Approx(t).epsilon(1e-12));
        for (std::int64_t id : sol.full_atoms) {
            const std::size_t i = static_cast<std::size_t>(id);
            CHECK(ins.field[i] <= sol.level);
        }
        std::vector<char> inside(ins.space.size(), 0);
        for (std::int64_t id : sol.full_atoms) inside[static_cast<std::size_t>(id)] = 1;
        if (sol.fractional) inside[static_cast<std::size_t>(sol.fractional->first)] = 1;
        for (std::size_t i = 0; i < ins.space.size(); ++i)
            if (!inside[i]) CHECK(ins.field[i] >= sol.level);
    }
}

TEST_CASE("brute force on (1,2,4): integral optimum exceeds fractional value") {
    auto ins = make({1, 2, 4}, {1, 1, 1});
    CHECK(brute_force_cover_value(ins.field, ins.space, 1.5) == doctest::Approx(3.0));
    CHECK(optimal_cover(ins.field, ins.space, 1.5).value < 3.0);
}

TEST_CASE("brute force: small-t and single-atom cases") {
    auto ins = make({2, 5}, {1, 1});
    CHECK(brute_force_cover_value(ins.field, ins.space, 0.5) == doctest::Approx(2.0));
    auto single = make({3}, {2});
    CHECK(brute_force_cover_value(single.field, single.space, 1.0) == doctest::Approx(6.0));
}

TEST_CASE("brute force: atom guard") {
    std::vector<double> values(21, 1.0), masses(21, 1.0);
    auto ins = make(values, masses);
    CHECK_THROWS_AS(brute_force_cover_value(ins.field, ins.space, 1.0), std::invalid_argument);
}

TEST_CASE("greedy on (1,2,4) and near-full mass") {
    auto ins = make({1, 2, 4}, {1, 1, 1});
    CHECK(greedy_cover_value(ins.field, ins.space, 1.5) == doctest::Approx(3.0));
    CHECK(greedy_cover_value(ins.field, ins.space, 3.0 - 1e-9) == doctest::Approx(7.0));
}

TEST_CASE("sandwich: optimal <= brute force <= greedy") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 300; ++trial) {
        auto ins = random_grid_instance(rng, 12);
        const double total = ins.space.total_mass();
        const double t = std::uniform_int_distribution<int>(1, 63)(rng) / 64.0 * total;
        if (!(t > 0.0) || !(t < total)) continue;
        const double j = optimal_cover(ins.field, ins.space, t).value;
        const double i = brute_force_cover_value(ins.field, ins.space, t);
        const double g = greedy_cover_value(ins.field, ins.space, t);
        CHECK(j <= i + 1e-12);
        CHECK(i <= g + 1e-12);
    }
}

TEST_CASE("greedy gap bound and refinement decay") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 50; ++trial) {
        auto ins = random_grid_instance(rng, 8);
        const double total = ins.space.total_mass();
        const double t = 0.4 * total;
        const auto sol = optimal_cover(ins.field, ins.space, t);
        const double gap = greedy_cover_value(ins.field, ins.space, t) - sol.value;
        double max_mass = 0.0;
        for (const auto& a : ins.space.atoms()) max_mass = std::max(max_mass, a.mass);
        CHECK(gap <= max_mass * sol.level + 1e-12);

        const int k = 16;
        const auto fine = refine(ins.space, k);
        std::vector<double> fine_values(fine.size());
        for (std::size_t i = 0; i < fine.size(); ++i)
            fine_values[i] = ins.field[refine_parent_index(ins.space, k, i)];
        const auto fine_field = ScalarField::from_values(fine, fine_values);
        const auto fine_sol = optimal_cover(fine_field, fine, t);
        const double fine_gap = greedy_cover_value(fine_field, fine, t) - fine_sol.value;
        // The bound scales with the atom mass, i.e. 1/k, with factor-2 slack.
        CHECK(fine_gap <= 2.0 * max_mass / k * fine_sol.level + 1e-12);
    }
}

TEST_CASE("scaling equivariance of the cover value") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 100; ++trial) {
        auto ins = random_grid_instance(rng, 12);
        const double t = 0.3 * ins.space.total_mass();
        const double c = 0.25 * std::uniform_int_distribution<int>(1, 16)(rng);
        std::vector<double> scaled(ins.field.values());
        for (double& v : scaled) v *= c;
        const auto scaled_field = ScalarField::from_values(ins.space, scaled);
        CHECK(optimal_cover(scaled_field, ins.space, t).value ==
              doctest::Approx(c * optimal_cover(ins.field, ins.space, t).value).epsilon(1e-12));
    }
}

TEST_CASE("sandwich bounds against the rearrangement") {
    auto ins = make({1, 2, 4}, {1, 1, 1});
    const auto check = cover_sandwich_check(ins.field, ins.space, 1.0, 2.0);
    // j_left = J(2.5) = 1+2+0.5*4 = 5, lower = 0.5 * 4 = 2
    CHECK(check.j_left == doctest::Approx(5.0));
    CHECK(check.lower_bound == doctest::Approx(2.0));
    // j_right = J(2) = 1 + 2 = 3, upper = 2 * 4 = 8
    CHECK(check.j_right == doctest::Approx(3.0));
    CHECK(check.upper_bound == doctest::Approx(8.0));
    CHECK(check.ok);

    auto c = make({3, 3}, {1, 1});
    const auto cc = cover_sandwich_check(c.field, c.space, 1.0, 2.0);
    CHECK(cc.ok);

    CHECK_THROWS_AS(cover_sandwich_check(ins.field, ins.space, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("sandwich holds on random instances") {
    std::mt19937_64 rng(33);
    for (int trial = 0; trial < 1000; ++trial) {
        auto ins = random_grid_instance(rng, 20);
        const double total = ins.space.total_mass();
        const double t = std::uniform_int_distribution<int>(1, 63)(rng) / 64.0 * total;
        const double theta = 1.0 + std::uniform_int_distribution<int>(1, 64)(rng) / 16.0;
        if (!(t > 0.0) || !(t < total)) continue;
        CHECK(cover_sandwich_check(ins.field, ins.space, t, theta).ok);
    }
}
