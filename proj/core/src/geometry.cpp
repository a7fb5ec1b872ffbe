#include "specdisc/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "specdisc/util.hpp"

namespace specdisc {

Box Cube::to_box() const {
    if (!(halfwidth > 0.0)) throw std::invalid_argument("Cube: halfwidth must be positive");
    Box b;
    b.lo.resize(center.size());
    b.hi.resize(center.size());
    for (std::size_t k = 0; k < center.size(); ++k) {
        b.lo[k] = center[k] - halfwidth;
        b.hi[k] = center[k] + halfwidth;
    }
    return b;
}

double Cube::volume() const { return std::pow(2.0 * halfwidth, static_cast<double>(dim())); }

double StarDomain::r_max() const {
    if (radii.empty()) throw std::invalid_argument("StarDomain: no samples");
    return *std::max_element(radii.begin(), radii.end());
}

double StarDomain::r_min() const {
    if (radii.empty()) throw std::invalid_argument("StarDomain: no samples");
    const double m = *std::min_element(radii.begin(), radii.end());
    if (!(m > 0.0)) throw std::invalid_argument("StarDomain: radial function must be positive");
    return m;
}

double StarDomain::eccentricity() const {
    const double d = static_cast<double>(directions.empty() ? radii.size() : directions[0].size());
    return std::pow(r_max() / r_min(), d);
}

double ball_volume(int d, double r) {
    if (d < 1 || !(r > 0.0)) throw std::invalid_argument("ball_volume: need d >= 1, r > 0");
    return std::pow(M_PI, d / 2.0) / std::tgamma(d / 2.0 + 1.0) * std::pow(r, d);
}

double isocapacity_constant(int d) {
    if (d < 3) throw std::invalid_argument("isocapacity_constant: requires d >= 3");
    const double dd = static_cast<double>(d);
    return std::pow(dd * (dd - 2.0) * std::pow(ball_volume(d, 1.0), 2.0 / dd), -dd / (dd - 2.0));
}

double ball_capacity(int d, double r) {
    if (d < 3 || !(r > 0.0)) throw std::invalid_argument("ball_capacity: need d >= 3, r > 0");
    const double dd = static_cast<double>(d);
    return dd * (dd - 2.0) * std::pow(ball_volume(d, 1.0), 2.0 / dd) *
           std::pow(ball_volume(d, r), (dd - 2.0) / dd);
}

namespace {

void check_madic_guard(std::size_t d, int n, int m) {
    if (n < 1 || m < 2) throw std::invalid_argument("madic cells: need n >= 1, m >= 2");
    const double bits = static_cast<double>(d) * n * std::log2(static_cast<double>(m));
    if (bits > 30.0) throw std::invalid_argument("madic cells: enumeration exceeds 2^30 cells");
}

}  // namespace

std::vector<std::vector<Rational>> madic_cells(const std::vector<std::int64_t>& l, int n, int m) {
    const std::size_t d = l.size();
    check_madic_guard(d, n, m);
    const std::int64_t per_axis = ipow(m, n);

    // Tiling anchors along one axis: l - 1 + (2j+1)/m^n, j = 0..m^n-1. These
    // are the only lattice anchors whose cells tile the cube exactly.
    std::vector<std::vector<Rational>> axis(d);
    for (std::size_t k = 0; k < d; ++k) {
        axis[k].reserve(static_cast<std::size_t>(per_axis));
        for (std::int64_t j = 0; j < per_axis; ++j)
            axis[k].push_back(Rational((l[k] - 1) * per_axis + 2 * j + 1, per_axis));
    }

    std::vector<std::vector<Rational>> anchors;
    std::vector<std::size_t> idx(d, 0);
    while (true) {
        std::vector<Rational> a(d);
        for (std::size_t k = 0; k < d; ++k) a[k] = axis[k][idx[k]];
        anchors.push_back(std::move(a));
        std::size_t k = d;
        bool done = true;
        while (k-- > 0) {
            if (++idx[k] < axis[k].size()) {
                done = false;
                break;
            }
            idx[k] = 0;
        }
        if (done) break;
    }
    return anchors;
}

RatBox madic_cell_box(const std::vector<Rational>& anchor, int n, int m) {
    const Rational h(1, ipow(m, n));
    RatBox b;
    b.lo.reserve(anchor.size());
    b.hi.reserve(anchor.size());
    for (const Rational& a : anchor) {
        b.lo.push_back(a - h);
        b.hi.push_back(a + h);
    }
    return b;
}

std::vector<std::vector<Rational>> madic_cells_inside(const std::vector<std::int64_t>& l, int n,
                                                      int m, const std::vector<RatBox>& region) {
    std::vector<std::vector<Rational>> out;
    for (auto& anchor : madic_cells(l, n, m))
        if (box_covered_by_union(madic_cell_box(anchor, n, m), region)) out.push_back(anchor);
    return out;
}

std::vector<RatBox> unit_chart_cells(const std::vector<std::int64_t>& l, int n, int m) {
    const std::size_t d = l.size();
    check_madic_guard(d, n, m);
    const std::int64_t per_axis = ipow(m, n);

    std::vector<RatBox> cells;
    std::vector<std::int64_t> idx(d, 0);
    while (true) {
        RatBox b;
        b.lo.reserve(d);
        b.hi.reserve(d);
        for (std::size_t k = 0; k < d; ++k) {
            b.lo.push_back(Rational(l[k] * per_axis + idx[k], per_axis));
            b.hi.push_back(Rational(l[k] * per_axis + idx[k] + 1, per_axis));
        }
        cells.push_back(std::move(b));
        std::size_t k = d;
        bool done = true;
        while (k-- > 0) {
            if (++idx[k] < per_axis) {
                done = false;
                break;
            }
            idx[k] = 0;
        }
        if (done) break;
    }
    return cells;
}

std::vector<RatBox> unit_chart_cells_inside(const std::vector<std::int64_t>& l, int n, int m,
                                            const std::vector<RatBox>& region) {
    std::vector<RatBox> out;
    for (auto& cell : unit_chart_cells(l, n, m))
        if (box_covered_by_union(cell, region)) out.push_back(cell);
    return out;
}

bool box_covered_by_union(const RatBox& cell, const std::vector<RatBox>& boxes) {
    if (cell.volume() == Rational(0)) return true;
    for (const RatBox& b : boxes) {
        if (b.contains(cell)) return true;
        if (!b.intersects(cell)) continue;
        // Split the cell along the first axis where b cuts it and recurse on
        // both halves; b fully covers one axis-slab eventually.
        for (std::size_t k = 0; k < cell.dim(); ++k) {
            for (const Rational& cut : {b.lo[k], b.hi[k]}) {
                if (cell.lo[k] < cut && cut < cell.hi[k]) {
                    RatBox left = cell, right = cell;
                    left.hi[k] = cut;
                    right.lo[k] = cut;
                    return box_covered_by_union(left, boxes) && box_covered_by_union(right, boxes);
                }
            }
        }
        // b intersects but induces no cut: cell inside b on every axis, so
        // contains(cell) would have been true. Unreachable.
    }
    return false;
}

GammaFn gamma_from_tilde(const GammaFn& gamma_tilde, int d, double eccentricity) {
    if (d < 3) throw std::invalid_argument("gamma_from_tilde: requires d >= 3");
    if (!(eccentricity >= 1.0))
        throw std::invalid_argument("gamma_from_tilde: eccentricity must be >= 1");
    const double e = (static_cast<double>(d) - 2.0) / static_cast<double>(d);
    return [gamma_tilde, eccentricity, e](double r) {
        return std::pow(gamma_tilde(r) / eccentricity, e);
    };
}

AdmissibilityTrace gamma_admissible(const GammaFn& gamma, double exponent, double r0, int window) {
    if (window < 8) throw std::invalid_argument("gamma_admissible: window too small");
    AdmissibilityTrace out;
    out.window = window;
    double max_seen = -1.0;
    int late_records = 0;
    int k0 = 1;
    while (std::pow(2.0, -k0) >= r0) ++k0;  // first dyadic radius inside (0, r0)
    for (int k = k0; k < k0 + window; ++k) {
        const double r = std::pow(2.0, -k);
        const double g = gamma(r);
        if (!(g > 0.0) || !(g < 1.0))
            throw std::domain_error("gamma_admissible: gamma(r) must lie in (0,1) on the window");
        const double v = std::pow(r, -exponent) * g;
        out.radii.push_back(r);
        out.values.push_back(v);
        if (v > max_seen) {
            if (k - k0 >= 3 * window / 4) ++late_records;
            max_seen = v;
        }
    }
    // Divergence surrogate: the trace still sets fresh running maxima in the
    // final quarter of the window and has grown overall. The 1e6 growth mark
    // is reported separately as `strong`.
    out.diverges = late_records >= 2 && out.values.back() > 10.0 * out.values.front();
    out.strong = out.values.back() > 1e6 * out.values.front();
    return out;
}

}  // namespace specdisc
