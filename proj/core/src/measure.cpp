#include "specdisc/measure.hpp"

#include <cmath>
#include <stdexcept>

#include "specdisc/util.hpp"

namespace specdisc {

namespace {
int g_threads = 1;
}

void set_worker_threads(int n) { g_threads = n < 1 ? 1 : n; }
int worker_threads() { return g_threads; }

double Box::volume() const {
    double v = 1.0;
    for (std::size_t k = 0; k < lo.size(); ++k) {
        if (!(lo[k] < hi[k])) throw std::invalid_argument("Box: lo must be < hi on every axis");
        v *= hi[k] - lo[k];
    }
    return v;
}

std::int64_t GridGeometry::cell_count() const {
    std::int64_t n = 1;
    for (auto r : resolution) n *= r;
    return n;
}

std::vector<std::int64_t> GridGeometry::cell_index(std::int64_t flat) const {
    std::vector<std::int64_t> idx(resolution.size());
    for (std::size_t k = resolution.size(); k-- > 0;) {
        idx[k] = flat % resolution[k];
        flat /= resolution[k];
    }
    return idx;
}

std::vector<double> GridGeometry::cell_center(std::int64_t flat) const {
    const auto idx = cell_index(flat);
    std::vector<double> c(idx.size());
    for (std::size_t k = 0; k < idx.size(); ++k) {
        const double w = (box.hi[k] - box.lo[k]) / static_cast<double>(resolution[k]);
        c[k] = box.lo[k] + (static_cast<double>(idx[k]) + 0.5) * w;
    }
    return c;
}

double GridGeometry::cell_volume() const {
    double v = 1.0;
    for (std::size_t k = 0; k < resolution.size(); ++k)
        v *= (box.hi[k] - box.lo[k]) / static_cast<double>(resolution[k]);
    return v;
}

WeightedSpace::WeightedSpace(std::vector<Atom> atoms, std::optional<GridGeometry> grid)
    : atoms_(std::move(atoms)), grid_(std::move(grid)) {
    if (atoms_.empty()) throw std::invalid_argument("WeightedSpace: no atoms");
    KahanSum total;
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
        if (!(atoms_[i].mass > 0.0) || !std::isfinite(atoms_[i].mass))
            throw std::invalid_argument("WeightedSpace: atom mass must be positive and finite");
        for (std::size_t j = i + 1; j < atoms_.size() && atoms_.size() <= 64; ++j)
            if (atoms_[j].id == atoms_[i].id)
                throw std::invalid_argument("WeightedSpace: duplicate atom id");
        total.add(atoms_[i].mass);
    }
    total_mass_ = total.value();
}

std::vector<double> WeightedSpace::center(std::size_t i) const {
    if (!grid_) throw std::logic_error("WeightedSpace: not grid-backed");
    return grid_->cell_center(atoms_.at(i).id);
}

WeightedSpace build_grid(const Box& box, const std::vector<std::int64_t>& resolution,
                         const DensityFn& density) {
    if (box.dim() == 0 || box.dim() != resolution.size())
        throw std::invalid_argument("build_grid: box/resolution dimension mismatch");
    box.volume();  // validates lo < hi
    for (auto r : resolution)
        if (r < 1) throw std::invalid_argument("build_grid: resolution must be >= 1 per axis");

    GridGeometry geom{box, resolution};
    const std::int64_t n = geom.cell_count();
    if (n > 20'000'000) throw std::invalid_argument("build_grid: grid too large");
    const double cellvol = geom.cell_volume();

    std::vector<Atom> atoms;
    atoms.reserve(static_cast<std::size_t>(n));
    for (std::int64_t flat = 0; flat < n; ++flat) {
        const double d = density(geom.cell_center(flat));
        if (d < 0.0 || !std::isfinite(d))
            throw std::invalid_argument("build_grid: density must be nonnegative and finite");
        if (d == 0.0) continue;
        atoms.push_back(Atom{flat, d * cellvol, 0.0});
    }
    if (atoms.empty()) throw std::invalid_argument("build_grid: zero total mass");
    return WeightedSpace(std::move(atoms), std::move(geom));
}

WeightedSpace build_grid(const Box& box, const std::vector<std::int64_t>& resolution,
                         double density) {
    return build_grid(box, resolution, [density](const std::vector<double>&) { return density; });
}

WeightedSpace refine(const WeightedSpace& space, int k) {
    if (k < 2) throw std::invalid_argument("refine: k must be >= 2");
    if (!space.grid()) throw std::invalid_argument("refine: space is not grid-backed");

    const GridGeometry& geom = *space.grid();
    const std::size_t d = geom.dim();
    std::int64_t children = 1;
    for (std::size_t i = 0; i < d; ++i) children *= k;

    GridGeometry fine{geom.box, geom.resolution};
    for (auto& r : fine.resolution) r *= k;

    std::vector<Atom> atoms;
    atoms.reserve(space.size() * static_cast<std::size_t>(children));
    std::vector<std::int64_t> sub(d, 0);
    for (const Atom& a : space.atoms()) {
        const auto coarse_idx = geom.cell_index(a.id);
        const double child_mass = a.mass / static_cast<double>(children);
        std::fill(sub.begin(), sub.end(), 0);
        for (std::int64_t c = 0; c < children; ++c) {
            std::int64_t flat = 0;
            for (std::size_t ax = 0; ax < d; ++ax)
                flat = flat * fine.resolution[ax] + coarse_idx[ax] * k + sub[ax];
            atoms.push_back(Atom{flat, child_mass, a.value});
            for (std::size_t ax = d; ax-- > 0;) {
                if (++sub[ax] < k) break;
                sub[ax] = 0;
            }
        }
    }
    return WeightedSpace(std::move(atoms), std::move(fine));
}

std::size_t refine_parent_index(const WeightedSpace& coarse, int k, std::size_t child_index) {
    std::int64_t children = 1;
    for (std::size_t i = 0; i < coarse.grid()->dim(); ++i) children *= k;
    return child_index / static_cast<std::size_t>(children);
}

Restriction restrict_space(const WeightedSpace& space, const RegionPredicate& region) {
    if (!space.grid()) throw std::invalid_argument("restrict_space: space is not grid-backed");
    std::vector<Atom> atoms;
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < space.size(); ++i) {
        if (region(space.center(i))) {
            atoms.push_back(space.atoms()[i]);
            kept.push_back(i);
        }
    }
    if (atoms.empty()) throw std::invalid_argument("restrict_space: empty restriction");
    return Restriction{WeightedSpace(std::move(atoms)), std::move(kept)};
}

Restriction restrict_space(const WeightedSpace& space, const Box& region) {
    return restrict_space(space, [&region](const std::vector<double>& c) {
        for (std::size_t k = 0; k < region.lo.size(); ++k)
            if (c[k] < region.lo[k] || c[k] >= region.hi[k]) return false;
        return true;
    });
}

}  // namespace specdisc
