#include "specdisc/densesys.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "specdisc/util.hpp"

namespace specdisc {

RatBox RatCube::to_box() const {
    RatBox b;
    b.lo.reserve(center.size());
    b.hi.reserve(center.size());
    for (const Rational& c : center) {
        b.lo.push_back(c - halfwidth);
        b.hi.push_back(c + halfwidth);
    }
    return b;
}

std::vector<RatBox> cantor_adjacent_intervals(int n) {
    if (n < 1) throw std::invalid_argument("cantor_adjacent_intervals: n must be >= 1");
    if (n > 20) throw std::invalid_argument("cantor_adjacent_intervals: level cap is 20");

    // Middle-thirds construction: after n-1 removal steps the remaining set
    // is 2^{n-1} closed intervals of length 3^{-(n-1)}; the level-n adjacent
    // intervals are their middle thirds.
    std::vector<Rational> starts = {Rational(0)};
    for (int level = 1; level < n; ++level) {
        const Rational third(1, ipow(3, level));
        std::vector<Rational> next;
        next.reserve(starts.size() * 2);
        for (const Rational& s : starts) {
            next.push_back(s);
            next.push_back(s + third + third);
        }
        starts = std::move(next);
    }
    const Rational len(1, ipow(3, n));
    std::vector<RatBox> out;
    out.reserve(starts.size());
    for (const Rational& s : starts) {
        RatBox b;
        b.lo = {s + len};
        b.hi = {s + len + len};
        out.push_back(std::move(b));
    }
    std::sort(out.begin(), out.end(),
              [](const RatBox& a, const RatBox& b) { return a.lo[0] < b.lo[0]; });
    return out;
}

DenseSystem cantor_system(int max_level) {
    DenseSystem sys;
    sys.dim = 1;
    sys.m = 3;
    sys.theta = Rational(1, 9);
    sys.ambient.lo = {Rational(0)};
    sys.ambient.hi = {Rational(1)};
    for (int n = 1; n <= max_level; ++n) sys.levels.push_back(cantor_adjacent_intervals(n));
    return sys;
}

DenseSystem cylinder_extend(const DenseSystem& system, int extra_dims) {
    if (extra_dims < 1) throw std::invalid_argument("cylinder_extend: extra_dims must be >= 1");
    DenseSystem out = system;
    out.dim = system.dim + extra_dims;
    for (int k = 0; k < extra_dims; ++k) {
        out.ambient.lo.push_back(Rational(0));
        out.ambient.hi.push_back(Rational(1));
    }
    for (auto& level : out.levels) {
        for (auto& box : level) {
            for (int k = 0; k < extra_dims; ++k) {
                box.lo.push_back(Rational(0));
                box.hi.push_back(Rational(1));
            }
        }
    }
    return out;
}

DenseSystem product_combine(const std::vector<DenseSystem>& systems) {
    if (systems.empty()) throw std::invalid_argument("product_combine: no systems");
    if (systems.size() == 1) return systems.front();

    DenseSystem out;
    out.m = systems.front().m;
    out.theta = systems.front().theta;
    out.dim = 0;
    std::size_t depth = systems.front().max_level();
    for (const DenseSystem& s : systems) {
        if (s.m != out.m || !(s.theta == out.theta))
            throw std::invalid_argument("product_combine: systems must share m and theta");
        out.dim += s.dim;
        depth = std::min(depth, s.max_level());
        for (std::size_t k = 0; k < s.ambient.lo.size(); ++k) {
            out.ambient.lo.push_back(s.ambient.lo[k]);
            out.ambient.hi.push_back(s.ambient.hi[k]);
        }
    }

    const std::size_t count = systems.size();
    for (std::size_t N = 1; N <= depth; ++N) {
        std::vector<RatBox> level;
        // Tuples (n_1..n_I) with max n_i == N.
        std::vector<std::size_t> tuple(count, 1);
        while (true) {
            if (*std::max_element(tuple.begin(), tuple.end()) == N) {
                // Cartesian product of the component level boxes.
                std::vector<RatBox> partial(1);
                for (std::size_t i = 0; i < count; ++i) {
                    std::vector<RatBox> next;
                    for (const RatBox& acc : partial) {
                        for (const RatBox& piece : systems[i].levels[tuple[i] - 1]) {
                            RatBox b = acc;
                            for (std::size_t k = 0; k < piece.lo.size(); ++k) {
                                b.lo.push_back(piece.lo[k]);
                                b.hi.push_back(piece.hi[k]);
                            }
                            next.push_back(std::move(b));
                        }
                    }
                    partial = std::move(next);
                }
                for (auto& b : partial) level.push_back(std::move(b));
            }
            std::size_t k = count;
            bool done = true;
            while (k-- > 0) {
                if (++tuple[k] <= N) {
                    done = false;
                    break;
                }
                tuple[k] = 1;
            }
            if (done) break;
        }
        out.levels.push_back(std::move(level));
    }
    return out;
}

int witness_level_bound(const DenseSystem& system, const Rational& r) {
    if (!(r > Rational(0))) throw std::invalid_argument("witness_level_bound: r must be > 0");
    int j = 0;
    Rational power(1);
    while (j < 36) {
        power *= Rational(system.m);
        if (power * system.theta * r > Rational(1)) break;
        ++j;
    }
    return j;
}

namespace {

Rational fit_limit(const DenseSystem& system) {
    Rational lim = (system.ambient.hi[0] - system.ambient.lo[0]) / Rational(2);
    for (std::size_t k = 1; k < system.ambient.lo.size(); ++k)
        lim = std::min(lim, (system.ambient.hi[k] - system.ambient.lo[k]) / Rational(2));
    return lim;
}

void check_witness_radius(const DenseSystem& system, const Rational& r) {
    const std::int64_t m2 = static_cast<std::int64_t>(system.m) * system.m;
    if (!(r > Rational(0)) || !(r < Rational(1)) || !(r * system.theta * Rational(m2) < Rational(1)))
        throw std::invalid_argument("find_witness: r outside (0, min(1, 1/(theta m^2)))");
}

}  // namespace

std::optional<Witness> find_witness(const DenseSystem& system, const RatCube& cube) {
    check_witness_radius(system, cube.halfwidth);
    if (!system.ambient.contains(cube.to_box()))
        throw std::invalid_argument("find_witness: cube not inside the ambient cube");

    const Rational need = Rational(2) * system.theta * cube.halfwidth;
    const int jmax = std::min<int>(witness_level_bound(system, cube.halfwidth),
                                   static_cast<int>(system.max_level()));
    const RatBox cb = cube.to_box();

    for (int j = 1; j <= jmax; ++j) {
        for (const RatBox& box : system.levels[static_cast<std::size_t>(j - 1)]) {
            bool fits = true;
            std::vector<Rational> inner_lo(cb.dim());
            for (std::size_t k = 0; k < cb.dim(); ++k) {
                const Rational olo = std::max(box.lo[k], cb.lo[k]);
                const Rational ohi = std::min(box.hi[k], cb.hi[k]);
                if (ohi - olo < need) {
                    fits = false;
                    break;
                }
                inner_lo[k] = olo;
            }
            if (!fits) continue;
            Witness w;
            w.level = j;
            w.parallelepiped = box;
            w.inner_halfwidth = system.theta * cube.halfwidth;
            w.inner_center.reserve(cb.dim());
            for (std::size_t k = 0; k < cb.dim(); ++k)
                w.inner_center.push_back(inner_lo[k] + w.inner_halfwidth);
            return w;
        }
    }
    return std::nullopt;
}

bool witness_valid(const DenseSystem& system, const RatCube& cube, const Witness& witness) {
    if (witness.level < 1 || witness.level > witness_level_bound(system, cube.halfwidth))
        return false;
    const auto& level = system.levels[static_cast<std::size_t>(witness.level - 1)];
    bool member = false;
    for (const RatBox& b : level)
        if (b.lo == witness.parallelepiped.lo && b.hi == witness.parallelepiped.hi) member = true;
    if (!member) return false;
    if (!(witness.inner_halfwidth == system.theta * cube.halfwidth)) return false;

    RatCube inner{witness.inner_center, witness.inner_halfwidth};
    const RatBox ib = inner.to_box();
    return witness.parallelepiped.contains(ib) && cube.to_box().contains(ib);
}

VerifyReport verify_dense_system(const DenseSystem& system, const SamplerConfig& config) {
    VerifyReport report;
    const Rational fit = fit_limit(system);
    const std::int64_t m2 = static_cast<std::int64_t>(system.m) * system.m;

    const auto radius_ok = [&](const Rational& r) {
        if (!(r > Rational(0)) || r > fit * Rational(999, 1000)) return false;
        if (!(r < Rational(1)) || !(r * system.theta * Rational(m2) < Rational(1))) return false;
        // A finite truncation can only decide cubes whose level budget it
        // holds; smaller radii are inconclusive, not failures.
        return witness_level_bound(system, r) <= static_cast<int>(system.max_level());
    };

    const auto run_cube = [&](std::vector<Rational> center, const Rational& r) {
        if (!radius_ok(r)) return;
        // Clamp the center so the cube fits inside the ambient box.
        for (std::size_t k = 0; k < center.size(); ++k) {
            center[k] = std::max(center[k], system.ambient.lo[k] + r);
            center[k] = std::min(center[k], system.ambient.hi[k] - r);
        }
        RatCube cube{std::move(center), r};
        ++report.tested;
        const auto w = find_witness(system, cube);
        if (w && !witness_valid(system, cube, *w))
            throw std::logic_error("verify_dense_system: witness failed revalidation");
        if (!w) {
            ++report.failed;
            if (report.failures.size() < 8)
                report.failures.push_back({cube.center, cube.halfwidth});
            if (report.failed == 1) report.worst_halfwidth = cube.halfwidth;
        }
    };

    // Radius grid: dyadic fractions of the fit limit plus scale-matched
    // triadic radii around each level's box size.
    std::vector<Rational> radii;
    for (int k = 1; k <= config.r_levels; ++k)
        radii.push_back(fit * Rational(1, ipow(2, std::min(k, 20))));
    for (std::size_t j = 1; j <= system.max_level() && j <= 12; ++j) {
        const Rational base(1, ipow(system.m, static_cast<int>(j)));
        for (const auto& c : {Rational(1, 2), Rational(2, 3), Rational(5, 4)})
            radii.push_back(base * c);
    }

    if (config.structured) {
        // Triadic-lattice family: cubes centered at cell midpoints of every
        // scale with scale-matched radii. This family spans the gap left by
        // any missing level exactly, independent of the level boxes present.
        const int scale_cap = static_cast<int>(std::min<std::size_t>(system.max_level(), 7));
        for (int s = 1; s <= scale_cap; ++s) {
            const std::int64_t den = ipow(3, s);
            for (std::int64_t k = 0; k < den; ++k) {
                std::vector<Rational> center(static_cast<std::size_t>(system.dim));
                for (int ax = 0; ax < system.dim; ++ax) {
                    const Rational lo = system.ambient.lo[static_cast<std::size_t>(ax)];
                    const Rational hi = system.ambient.hi[static_cast<std::size_t>(ax)];
                    center[static_cast<std::size_t>(ax)] =
                        lo + (hi - lo) * Rational(2 * k + 1, 2 * den);
                }
                for (const auto& c : {Rational(1, 2), Rational(2, 3), Rational(5, 4)})
                    run_cube(center, Rational(1, den) * c);
            }
        }
        // Adversarial families from the construction's own case analysis:
        // cubes pinned at box endpoints (shifted by small epsilons) and
        // cubes barely covering a whole box.
        for (std::size_t j = 0; j < system.max_level(); ++j) {
            const Rational eps(1, ipow(3, static_cast<int>(std::min<std::size_t>(j + 3, 18))));
            for (const RatBox& box : system.levels[j]) {
                std::vector<Rational> mid(system.ambient.lo.size());
                for (std::size_t k = 0; k < mid.size(); ++k)
                    mid[k] = (box.lo[k] + box.hi[k]) / Rational(2);
                const Rational span = (box.hi[0] - box.lo[0]) / Rational(2);
                run_cube(mid, span + eps);   // cube just covering the box
                run_cube(mid, span - eps);   // cube just inside the box
                for (const Rational& r : radii) {
                    std::vector<Rational> at_lo = mid, at_hi = mid;
                    at_lo[0] = box.lo[0] - eps;
                    at_hi[0] = box.hi[0] + eps;
                    run_cube(at_lo, r);
                    run_cube(at_hi, r);
                }
                if (report.tested > 4 * config.random_samples) break;
            }
        }
    }

    std::mt19937_64 rng(config.seed);
    std::uniform_int_distribution<std::int64_t> num(0, 1 << 20);
    std::uniform_int_distribution<std::size_t> pick(0, radii.size() - 1);
    for (std::int64_t i = 0; i < config.random_samples; ++i) {
        std::vector<Rational> center;
        center.reserve(static_cast<std::size_t>(system.dim));
        for (int k = 0; k < system.dim; ++k) {
            const Rational u(num(rng), 1 << 20);
            center.push_back(system.ambient.lo[static_cast<std::size_t>(k)] +
                             u * (system.ambient.hi[static_cast<std::size_t>(k)] -
                                  system.ambient.lo[static_cast<std::size_t>(k)]));
        }
        run_cube(std::move(center), radii[pick(rng)]);
    }
    return report;
}

}  // namespace specdisc
