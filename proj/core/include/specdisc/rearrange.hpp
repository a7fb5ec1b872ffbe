#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "specdisc/measure.hpp"

namespace specdisc {

/// Nonnegative scalar field sampled on a WeightedSpace, aligned to atom
/// order.
class ScalarField {
public:
    static ScalarField from_values(const WeightedSpace& space, std::vector<double> values);
    /// Closed-form rule evaluated at cell centers (grid-backed spaces).
    static ScalarField from_function(const WeightedSpace& space,
                                     const std::function<double(const std::vector<double>&)>& fn);

    const std::vector<double>& values() const { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }
    std::size_t size() const { return values_.size(); }

private:
    explicit ScalarField(std::vector<double> values) : values_(std::move(values)) {}
    std::vector<double> values_;
};

/// Sorted value/mass profile of a field over a space. All rearrangement
/// queries run on this: one O(n log n) sort, compensated prefix masses, then
/// binary search. No approximation anywhere.
class DistributionProfile {
public:
    DistributionProfile(const ScalarField& field, const WeightedSpace& space);

    /// Restricted profile over a subset of atom indices.
    DistributionProfile(const ScalarField& field, const WeightedSpace& space,
                        const std::vector<std::size_t>& subset);

    double total_mass() const { return total_mass_; }

    /// Mass of {W <= s}; right-continuous in s.
    double mass_below(double s) const;
    /// Mass of {W >= s}.
    double mass_above(double s) const;
    /// Mass of {W < s}.
    double mass_strictly_below(double s) const;

    /// Non-decreasing rearrangement: sup of levels whose sublevel mass stays
    /// under t. On a finite profile this is the smallest value whose
    /// cumulative mass reaches t, and 0 when the zero layer alone already
    /// weighs t.
    double nondecreasing_value(double t) const;

    /// Non-increasing rearrangement: sup of positive levels whose superlevel
    /// mass is still >= t (the inclusive variant); 0 when no positive level
    /// qualifies.
    double nonincreasing_value(double t) const;

    const std::vector<double>& distinct_values() const { return values_; }

private:
    void build(const ScalarField& field, const WeightedSpace& space,
               const std::vector<std::size_t>* subset);
    void check_t(double t) const;

    std::vector<double> values_;   // distinct, ascending
    std::vector<double> cum_;      // mass of {W <= values_[i]}
    std::vector<double> tail_;     // mass of {W >= values_[i]}
    double total_mass_ = 0.0;
};

struct StrictSublevel {
    std::vector<std::size_t> atom_indices;  // K^-: atoms with W < W_*(t)
    double mass = 0.0;                      // kappa^-
    double level = 0.0;                     // W_*(t)
};

/// The strict sublevel set under the non-decreasing rearrangement level,
/// with its mass. mass <= t always.
StrictSublevel strict_sublevel(const ScalarField& field, const WeightedSpace& space, double t);

struct UnionInequalityResult {
    double whole = 0.0;      // rearrangement on the union at t * mass(union)
    double part_min = 0.0;   // min over parts at t * mass(part)
    bool ok = false;         // whole >= part_min
};

/// Disjoint-union lower bound for the non-increasing rearrangement at a
/// common mass fraction t in (0,1). Parts are disjoint atom-index sets.
UnionInequalityResult check_union_inequality(const ScalarField& field, const WeightedSpace& space,
                                             const std::vector<std::vector<std::size_t>>& parts,
                                             double t);

struct InclusionResult {
    double inner = 0.0;
    double outer = 0.0;
    bool ok = false;  // inner <= outer
};

/// Monotonicity of the non-increasing rearrangement under set inclusion at a
/// fixed absolute mass t.
InclusionResult check_inclusion_monotonicity(const ScalarField& field, const WeightedSpace& space,
                                             const std::vector<std::size_t>& subset, double t);

}  // namespace specdisc
