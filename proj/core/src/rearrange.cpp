#include "specdisc/rearrange.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "specdisc/util.hpp"

namespace specdisc {

ScalarField ScalarField::from_values(const WeightedSpace& space, std::vector<double> values) {
    if (values.size() != space.size())
        throw std::invalid_argument("ScalarField: value count does not match atom count");
    for (double v : values)
        if (v < 0.0 || !std::isfinite(v))
            throw std::invalid_argument("ScalarField: values must be nonnegative and finite");
    return ScalarField(std::move(values));
}

ScalarField ScalarField::from_function(
    const WeightedSpace& space, const std::function<double(const std::vector<double>&)>& fn) {
    std::vector<double> values(space.size());
    for (std::size_t i = 0; i < space.size(); ++i) values[i] = fn(space.center(i));
    return from_values(space, std::move(values));
}

DistributionProfile::DistributionProfile(const ScalarField& field, const WeightedSpace& space) {
    build(field, space, nullptr);
}

DistributionProfile::DistributionProfile(const ScalarField& field, const WeightedSpace& space,
                                         const std::vector<std::size_t>& subset) {
    build(field, space, &subset);
}

void DistributionProfile::build(const ScalarField& field, const WeightedSpace& space,
                                const std::vector<std::size_t>* subset) {
    if (field.size() != space.size())
        throw std::invalid_argument("DistributionProfile: field/space mismatch");

    std::vector<std::size_t> order;
    if (subset) {
        order = *subset;
        for (std::size_t i : order)
            if (i >= space.size()) throw std::out_of_range("DistributionProfile: bad subset index");
    } else {
        order.resize(space.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
    }
    if (order.empty()) throw std::invalid_argument("DistributionProfile: empty carrier");

    std::sort(order.begin(), order.end(),
              [&field](std::size_t a, std::size_t b) { return field[a] < field[b]; });

    // Collapse equal values; ties are pure mass aggregation, atom identity
    // never leaks into the profile.
    KahanSum cum;
    for (std::size_t i = 0; i < order.size();) {
        const double v = field[order[i]];
        KahanSum layer;
        std::size_t j = i;
        while (j < order.size() && field[order[j]] == v) {
            layer.add(space.atoms()[order[j]].mass);
            ++j;
        }
        cum.add(layer.value());
        values_.push_back(v);
        cum_.push_back(cum.value());
        i = j;
    }
    total_mass_ = cum_.back();

    tail_.resize(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i)
        tail_[i] = total_mass_ - (i == 0 ? 0.0 : cum_[i - 1]);
}

double DistributionProfile::mass_below(double s) const {
    const auto it = std::upper_bound(values_.begin(), values_.end(), s);
    if (it == values_.begin()) return 0.0;
    return cum_[static_cast<std::size_t>(it - values_.begin()) - 1];
}

double DistributionProfile::mass_strictly_below(double s) const {
    const auto it = std::lower_bound(values_.begin(), values_.end(), s);
    if (it == values_.begin()) return 0.0;
    return cum_[static_cast<std::size_t>(it - values_.begin()) - 1];
}

double DistributionProfile::mass_above(double s) const {
    const auto it = std::lower_bound(values_.begin(), values_.end(), s);
    if (it == values_.end()) return 0.0;
    return tail_[static_cast<std::size_t>(it - values_.begin())];
}

void DistributionProfile::check_t(double t) const {
    if (!(t > 0.0) || t > total_mass_)
        throw std::invalid_argument("rearrangement: t must lie in (0, total_mass]");
}

double DistributionProfile::nondecreasing_value(double t) const {
    check_t(t);
    // Smallest value with cumulative mass >= t. This realizes the sup of the
    // definition including the subtlety that the sup set {s>0: mass_below(s)<t}
    // is nonempty whenever min W > 0, and empty (=> 0) when the zero layer
    // already carries mass >= t.
    const auto it = std::lower_bound(cum_.begin(), cum_.end(), t);
    if (it == cum_.end()) return values_.back();
    return values_[static_cast<std::size_t>(it - cum_.begin())];
}

double DistributionProfile::nonincreasing_value(double t) const {
    check_t(t);
    // Largest positive value whose superlevel mass is >= t; 0 when none is.
    for (std::size_t i = values_.size(); i-- > 0;) {
        if (values_[i] <= 0.0) break;
        if (tail_[i] >= t) return values_[i];
    }
    return 0.0;
}

StrictSublevel strict_sublevel(const ScalarField& field, const WeightedSpace& space, double t) {
    DistributionProfile profile(field, space);
    StrictSublevel out;
    out.level = profile.nondecreasing_value(t);
    KahanSum mass;
    for (std::size_t i = 0; i < space.size(); ++i) {
        if (field[i] < out.level) {
            out.atom_indices.push_back(i);
            mass.add(space.atoms()[i].mass);
        }
    }
    out.mass = mass.value();
    return out;
}

UnionInequalityResult check_union_inequality(const ScalarField& field, const WeightedSpace& space,
                                             const std::vector<std::vector<std::size_t>>& parts,
                                             double t) {
    if (!(t > 0.0) || !(t < 1.0))
        throw std::invalid_argument("check_union_inequality: t must lie in (0,1)");
    std::vector<char> seen(space.size(), 0);
    std::vector<std::size_t> all;
    for (const auto& part : parts) {
        for (std::size_t i : part) {
            if (i >= space.size() || seen[i])
                throw std::invalid_argument("check_union_inequality: parts overlap");
            seen[i] = 1;
            all.push_back(i);
        }
    }

    DistributionProfile whole(field, space, all);
    UnionInequalityResult out;
    out.whole = whole.nonincreasing_value(t * whole.total_mass());
    out.part_min = std::numeric_limits<double>::infinity();
    for (const auto& part : parts) {
        DistributionProfile p(field, space, part);
        out.part_min = std::min(out.part_min, p.nonincreasing_value(t * p.total_mass()));
    }
    out.ok = out.whole >= out.part_min;
    return out;
}

InclusionResult check_inclusion_monotonicity(const ScalarField& field, const WeightedSpace& space,
                                             const std::vector<std::size_t>& subset, double t) {
    DistributionProfile inner(field, space, subset);
    DistributionProfile outer(field, space);
    if (!(t > 0.0) || t > inner.total_mass())
        throw std::invalid_argument("check_inclusion_monotonicity: t out of range for the subset");
    InclusionResult out;
    out.inner = inner.nonincreasing_value(t);
    out.outer = outer.nonincreasing_value(t);
    out.ok = out.inner <= out.outer;
    return out;
}

}  // namespace specdisc
