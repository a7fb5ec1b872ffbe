#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "specdisc/rearrange.hpp"

namespace specdisc {

/// Solution of the mass-constrained covering problem. The optimal set is a
/// list of whole atoms plus at most one fractionally taken atom from the tie
/// layer, which makes achieved_mass equal t exactly.
struct CoverSolution {
    double value = 0.0;
    std::vector<std::int64_t> full_atoms;                  // atom ids
    std::optional<std::pair<std::int64_t, double>> fractional;  // (atom id, fraction in (0,1])
    double achieved_mass = 0.0;
    double level = 0.0;           // rearrangement level at t
    double strict_mass = 0.0;     // mass strictly below the level
};

/// Exact value and witness set of the non-atomic covering problem on an
/// atomic space, realized by fractional splitting inside the tie layer:
/// value = integral over the strict sublevel set + (t - its mass) * level.
CoverSolution optimal_cover(const ScalarField& field, const WeightedSpace& space, double t);

/// Exact minimum of the integral over whole-atom sets of mass >= t.
/// Enumerates all subsets; guarded to spaces of at most 20 atoms.
double brute_force_cover_value(const ScalarField& field, const WeightedSpace& space, double t);

/// Whole atoms in nondecreasing value order until the mass constraint is
/// met. An upper bound for the covering value on any space; the gap to
/// optimal_cover is at most (max atom mass) * level.
double greedy_cover_value(const ScalarField& field, const WeightedSpace& space, double t);

struct SandwichCheck {
    double lower_bound = 0.0;   // ((theta-1) t / theta) * upper rearrangement at t
    double j_left = 0.0;        // cover value at mass total - t/theta
    double j_right = 0.0;       // cover value at mass total - t
    double upper_bound = 0.0;   // (total - t) * upper rearrangement at t
    bool ok = false;
};

/// Two-sided pinch of the covering value by the non-increasing
/// rearrangement: j_left >= lower_bound and j_right <= upper_bound.
SandwichCheck cover_sandwich_check(const ScalarField& field, const WeightedSpace& space, double t,
                                   double theta, double slack = 1e-12);

}  // namespace specdisc
