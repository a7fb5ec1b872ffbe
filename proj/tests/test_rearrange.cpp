#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "specdisc/rearrange.hpp"

using namespace specdisc;

namespace {

WeightedSpace unit_atoms(std::size_t n) {
    std::vector<Atom> atoms;
    for (std::size_t i = 0; i < n; ++i) atoms.push_back(Atom{static_cast<std::int64_t>(i), 1.0, 0.0});
    return WeightedSpace(std::move(atoms));
}

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

// Dyadic random instances make every mass comparison exact in binary
// floating point.
Instance random_dyadic(std::mt19937_64& rng, std::size_t max_atoms = 24) {
    std::uniform_int_distribution<std::size_t> size(1, max_atoms);
    std::uniform_int_distribution<int> mass_num(1, 1024);
    std::uniform_int_distribution<int> value_num(0, 64);
    const std::size_t n = size(rng);
    std::vector<double> values(n), masses(n);
    for (std::size_t i = 0; i < n; ++i) {
        masses[i] = mass_num(rng) / 1024.0;
        values[i] = value_num(rng) / 64.0;
    }
    return make(std::move(values), std::move(masses));
}

}  // namespace

TEST_CASE("sublevel and superlevel masses on (1,2,4)") {
    auto ins = make({1, 2, 4}, {1, 1, 1});
    DistributionProfile profile(ins.field, ins.space);
    CHECK(profile.mass_below(2.0) == 2.0);
    CHECK(profile.mass_below(0.5) == 0.0);
    CHECK(profile.mass_below(4.0) == 3.0);
    CHECK(profile.mass_above(2.0) == 2.0);
    CHECK(profile.mass_above(0.0) == 3.0);
    CHECK(profile.mass_above(4.5) == 0.0);
}

TEST_CASE("nondecreasing rearrangement on (1,2,4)") {
    auto ins = make({1, 2, 4}, {1, 1, 1});
    DistributionProfile profile(ins.field, ins.space);
    CHECK(profile.nondecreasing_value(1.5) == 2.0);
    // Regression: for t below the lightest layer the sup runs over all
    // s < min value, so the value is the minimum, not 0.
    CHECK(profile.nondecreasing_value(0.5) == 1.0);
    CHECK_THROWS_AS(profile.nondecreasing_value(0.0), std::invalid_argument);
    CHECK_THROWS_AS(profile.nondecreasing_value(3.5), std::invalid_argument);
}

TEST_CASE("nondecreasing rearrangement of a constant field") {
    auto ins = make({7, 7, 7, 7}, {0.5, 0.25, 1.0, 0.25});
    DistributionProfile profile(ins.field, ins.space);
    for (double t : {0.1, 1.0, 2.0}) CHECK(profile.nondecreasing_value(t) == 7.0);
}

TEST_CASE("nonincreasing rearrangement examples") {
    auto ins = make({5, 3, 3, 1}, {1, 1, 1, 1});
    DistributionProfile profile(ins.field, ins.space);
    CHECK(profile.nonincreasing_value(2.0) == 3.0);  // tail(3)=3 >= 2, tail(5)=1 < 2

    auto tri = make({1, 2, 4}, {1, 1, 1});
    DistributionProfile p2(tri.field, tri.space);
    CHECK(p2.nonincreasing_value(3.0) == 1.0);
    CHECK(p2.nonincreasing_value(1.0) == 4.0);

    auto constant = make({2, 2}, {1, 3});
    DistributionProfile p3(constant.field, constant.space);
    CHECK(p3.nonincreasing_value(4.0) == 2.0);
}

TEST_CASE("zero field has zero nonincreasing rearrangement") {
    auto ins = make({0, 0}, {1, 1});
    DistributionProfile profile(ins.field, ins.space);
    CHECK(profile.nonincreasing_value(1.0) == 0.0);
    CHECK(profile.nondecreasing_value(1.0) == 0.0);
}

TEST_CASE("strict sublevel set") {
    auto ins = make({1, 2, 4}, {1, 1, 1});
    auto s = strict_sublevel(ins.field, ins.space, 1.5);
    CHECK(s.level == 2.0);
    CHECK(s.mass == 1.0);
    REQUIRE(s.atom_indices.size() == 1);
    CHECK(ins.field[s.atom_indices[0]] == 1.0);

    auto s2 = strict_sublevel(ins.field, ins.space, 3.0);
    CHECK(s2.level == 4.0);
    CHECK(s2.mass == 2.0);

    auto c = make({3, 3}, {1, 1});
    auto s3 = strict_sublevel(c.field, c.space, 1.0);
    CHECK(s3.mass == 0.0);
    CHECK(s3.atom_indices.empty());
}

TEST_CASE("duality: mass_below + mass_above - layer = total") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        auto ins = random_dyadic(rng);
        DistributionProfile profile(ins.field, ins.space);
        for (double s : profile.distinct_values()) {
            const double layer = profile.mass_below(s) - profile.mass_strictly_below(s);
            CHECK(profile.mass_below(s) + profile.mass_above(s) - layer ==
                  doctest::Approx(profile.total_mass()).epsilon(1e-13));
        }
    }
}

TEST_CASE("monotonicity of both rearrangements in t") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> uni(1e-6, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        auto ins = random_dyadic(rng);
        DistributionProfile profile(ins.field, ins.space);
        std::vector<double> ts;
        for (int i = 0; i < 20; ++i) ts.push_back(uni(rng) * profile.total_mass());
        std::sort(ts.begin(), ts.end());
        for (std::size_t i = 1; i < ts.size(); ++i) {
            CHECK(profile.nonincreasing_value(ts[i]) <= profile.nonincreasing_value(ts[i - 1]));
            CHECK(profile.nondecreasing_value(ts[i]) >= profile.nondecreasing_value(ts[i - 1]));
        }
    }
}

TEST_CASE("union inequality: single part is equality") {
    auto ins = make({1, 5, 2, 4}, {1, 2, 1, 1});
    std::vector<std::size_t> all{0, 1, 2, 3};
    auto res = check_union_inequality(ins.field, ins.space, {all}, 0.4);
    CHECK(res.ok);
    CHECK(res.whole == res.part_min);
}

TEST_CASE("union inequality: two homogeneous parts") {
    auto ins = make({1, 1, 9, 9}, {1, 1, 1, 1});
    auto res = check_union_inequality(ins.field, ins.space, {{0, 1}, {2, 3}}, 0.5);
    CHECK(res.whole == 9.0);   // tail mass of level 9 is half the union
    CHECK(res.part_min == 1.0);
    CHECK(res.ok);
}

TEST_CASE("union inequality: overlap is rejected") {
    auto ins = make({1, 2}, {1, 1});
    CHECK_THROWS_AS(check_union_inequality(ins.field, ins.space, {{0}, {0}}, 0.5),
                    std::invalid_argument);
}

TEST_CASE("union inequality: randomized property") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> tpick(0.05, 0.95);
    for (int trial = 0; trial < 1000; ++trial) {
        auto ins = random_dyadic(rng, 30);
        const std::size_t n = ins.space.size();
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::shuffle(order.begin(), order.end(), rng);
        std::vector<std::vector<std::size_t>> parts(3);
        for (std::size_t i = 0; i < n; ++i) parts[i % 3].push_back(order[i]);
        parts.erase(std::remove_if(parts.begin(), parts.end(),
                                   [](const auto& p) { return p.empty(); }),
                    parts.end());
        const int tnum = std::uniform_int_distribution<int>(1, 1023)(rng);
        auto res = check_union_inequality(ins.field, ins.space, parts, tnum / 1024.0);
        CHECK(res.ok);
    }
}

TEST_CASE("inclusion monotonicity: equality and random halves") {
    auto ins = make({1, 5, 2, 4}, {1, 2, 1, 1});
    std::vector<std::size_t> all{0, 1, 2, 3};
    auto eq = check_inclusion_monotonicity(ins.field, ins.space, all, 2.0);
    CHECK(eq.inner == eq.outer);

    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 1000; ++trial) {
        auto rnd = random_dyadic(rng, 30);
        const std::size_t n = rnd.space.size();
        std::vector<std::size_t> subset;
        for (std::size_t i = 0; i < n; ++i)
            if (rng() & 1) subset.push_back(i);
        if (subset.empty()) subset.push_back(0);
        double sub_mass = 0.0;
        for (std::size_t i : subset) sub_mass += rnd.space.atoms()[i].mass;
        const int tnum = std::uniform_int_distribution<int>(1, 1023)(rng);
        auto res = check_inclusion_monotonicity(rnd.field, rnd.space, subset,
                                                tnum / 1024.0 * sub_mass);
        CHECK(res.ok);
    }
}

TEST_CASE("single-atom subset never exceeds the full-space value") {
    auto ins = make({1, 5, 2, 4}, {1, 2, 1, 1});
    auto res = check_inclusion_monotonicity(ins.field, ins.space, {2}, 0.5);
    CHECK(res.inner <= res.outer);
    CHECK(res.inner == 2.0);
}

TEST_CASE("restricted profile matches a standalone space") {
    auto ins = make({3, 1, 4, 1, 5}, {1, 2, 1, 2, 1});
    DistributionProfile sub(ins.field, ins.space, std::vector<std::size_t>{0, 2, 4});
    CHECK(sub.total_mass() == 3.0);
    CHECK(sub.nonincreasing_value(2.0) == 4.0);
    (void)unit_atoms(1);
}
