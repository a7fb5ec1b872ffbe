#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace specdisc {

/// Axis-aligned box in R^d, floating endpoints.
struct Box {
    std::vector<double> lo;
    std::vector<double> hi;

    std::size_t dim() const { return lo.size(); }
    double volume() const;
};

/// One carrier point of a finite measure space. `value` is the optional
/// attached scalar sample (used by serialized spaces); fields proper live in
/// ScalarField.
struct Atom {
    std::int64_t id = 0;
    double mass = 0.0;
    double value = 0.0;
};

/// Cell geometry retained by grid-built spaces; needed by refine() and by
/// closed-form field binding. Cells are half-open [a,b) except the last cell
/// per axis, which is closed, so restrictions never double count.
struct GridGeometry {
    Box box;
    std::vector<std::int64_t> resolution;  // cells per axis

    std::size_t dim() const { return resolution.size(); }
    std::int64_t cell_count() const;
    std::vector<std::int64_t> cell_index(std::int64_t flat) const;
    std::vector<double> cell_center(std::int64_t flat) const;
    double cell_volume() const;
};

/// Finite measure space: a list of atoms with positive masses. Immutable
/// after construction; total mass is cached via compensated summation.
class WeightedSpace {
public:
    WeightedSpace(std::vector<Atom> atoms, std::optional<GridGeometry> grid = std::nullopt);

    const std::vector<Atom>& atoms() const { return atoms_; }
    std::size_t size() const { return atoms_.size(); }
    double total_mass() const { return total_mass_; }
    const std::optional<GridGeometry>& grid() const { return grid_; }

    /// Center of the cell behind atom `i` (grid-built spaces only).
    std::vector<double> center(std::size_t i) const;

private:
    std::vector<Atom> atoms_;
    double total_mass_;
    std::optional<GridGeometry> grid_;
};

using DensityFn = std::function<double(const std::vector<double>&)>;
using RegionPredicate = std::function<bool(const std::vector<double>&)>;

/// One atom per grid cell, mass = density(cell center) * cell volume, in
/// deterministic lexicographic cell order. Cells whose density evaluates to
/// zero are dropped (atom masses must stay positive); a space with no mass
/// at all is an error.
WeightedSpace build_grid(const Box& box, const std::vector<std::int64_t>& resolution,
                         const DensityFn& density);
WeightedSpace build_grid(const Box& box, const std::vector<std::int64_t>& resolution,
                         double density = 1.0);

/// Split every atom of a grid-built space into k^d equal-mass children.
/// Total mass is unchanged; supports the non-atomic limit of the covering
/// solver.
WeightedSpace refine(const WeightedSpace& space, int k);

/// Index of the parent atom (in `coarse`) of child atom `child_index` in
/// refine(coarse, k). Lets callers transport piecewise-constant fields.
std::size_t refine_parent_index(const WeightedSpace& coarse, int k, std::size_t child_index);

struct Restriction {
    WeightedSpace space;
    std::vector<std::size_t> kept;  // indices into the source atom list
};

/// Atoms whose cell center lies in the region; per-atom masses preserved.
/// The result is no longer grid-backed.
Restriction restrict_space(const WeightedSpace& space, const RegionPredicate& region);

/// Convenience: region = axis-aligned box (half-open test against centers).
Restriction restrict_space(const WeightedSpace& space, const Box& region);

}  // namespace specdisc
