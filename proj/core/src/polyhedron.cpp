#include "specdisc/polyhedron.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/beta.hpp>

#include "specdisc/util.hpp"

namespace specdisc {

namespace {

using GK = boost::math::quadrature::gauss_kronrod<double, 31>;

void check_d(int d) {
    if (d < 3) throw std::invalid_argument("slice/distorted measure: requires d >= 3");
}

}  // namespace

double ball_slice_fraction(int d, double c) {
    check_d(d);
    if (c < -1.0 || c > 1.0) throw std::domain_error("ball_slice_fraction: |c| > 1");
    // Cross-sections are (d-1)-balls of radius sqrt(1-u^2); the normalized
    // slice volume is a regularized incomplete beta in (1+c)/2.
    const double a = (static_cast<double>(d) + 1.0) / 2.0;
    return boost::math::ibeta(a, a, (1.0 + c) / 2.0);
}

double ball_slice_inverse(int d, double u) {
    check_d(d);
    if (!(u >= 0.0) || !(u <= 1.0)) throw std::domain_error("ball_slice_inverse: u outside [0,1]");
    if (u == 0.0) return -1.0;
    if (u == 1.0) return 1.0;
    double lo = -1.0, hi = 1.0;
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        (ball_slice_fraction(d, mid) < u ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double SliceMap::value_at_x1(double x1) const {
    const double c = (x1 - ball.center[0]) / ball.radius;
    return ball_slice_fraction(d, std::clamp(c, -1.0, 1.0));
}

double SliceMap::value(const std::vector<double>& x) const { return value_at_x1(x[0]); }

double SliceMap::inverse(double u) const {
    return ball.center[0] + ball.radius * ball_slice_inverse(d, u);
}

PushforwardReport pushforward_check(int d, const Ball& ball,
                                    const std::vector<std::int64_t>& resolution,
                                    const std::vector<std::pair<double, double>>& intervals) {
    check_d(d);
    if (resolution.size() != static_cast<std::size_t>(d))
        throw std::invalid_argument("pushforward_check: resolution/dimension mismatch");
    SliceMap slice{d, ball};

    Box bb;
    bb.lo.resize(d);
    bb.hi.resize(d);
    for (int k = 0; k < d; ++k) {
        bb.lo[k] = ball.center[k] - ball.radius;
        bb.hi[k] = ball.center[k] + ball.radius;
    }
    GridGeometry geom{bb, resolution};
    const std::int64_t n = geom.cell_count();
    if (n > 40'000'000) throw std::invalid_argument("pushforward_check: grid too large");

    // One pass over the grid: per first-axis layer, count transverse centers
    // inside the ball.
    const std::int64_t n1 = resolution[0];
    std::int64_t transverse = 1;
    for (int k = 1; k < d; ++k) transverse *= resolution[k];

    std::vector<std::int64_t> layer_count(n1, 0);
    std::vector<double> layer_x1(n1);
    const double w1 = (bb.hi[0] - bb.lo[0]) / static_cast<double>(n1);
    for (std::int64_t i = 0; i < n1; ++i) layer_x1[i] = bb.lo[0] + (i + 0.5) * w1;

    std::vector<double> width(d), base(d);
    for (int k = 0; k < d; ++k)
        width[k] = (bb.hi[k] - bb.lo[k]) / static_cast<double>(resolution[k]);

    for (std::int64_t i = 0; i < n1; ++i) {
        const double dx1 = layer_x1[i] - ball.center[0];
        const double rem2 = ball.radius * ball.radius - dx1 * dx1;
        if (rem2 <= 0.0) continue;
        // enumerate transverse cells, accumulating squared distance
        std::vector<std::int64_t> idx(d - 1, 0);
        std::int64_t count = 0;
        for (std::int64_t t = 0; t < transverse; ++t) {
            double s2 = 0.0;
            std::int64_t rest = t;
            for (int k = d - 1; k >= 1; --k) {
                const std::int64_t ik = rest % resolution[k];
                rest /= resolution[k];
                const double c = bb.lo[k] + (ik + 0.5) * width[k] - ball.center[k];
                s2 += c * c;
            }
            if (s2 < rem2) ++count;
        }
        layer_count[i] = count;
    }

    KahanSum total;
    for (std::int64_t i = 0; i < n1; ++i) total.add(static_cast<double>(layer_count[i]));
    if (!(total.value() > 0.0)) throw std::invalid_argument("pushforward_check: empty grid ball");

    PushforwardReport out;
    for (const auto& [u, v] : intervals) {
        if (!(u >= 0.0) || !(v <= 1.0) || !(u < v))
            throw std::invalid_argument("pushforward_check: bad interval");
        const double x_lo = slice.inverse(u);
        const double x_hi = slice.inverse(v);
        KahanSum inside;
        for (std::int64_t i = 0; i < n1; ++i)
            if (layer_x1[i] >= x_lo && layer_x1[i] < x_hi)
                inside.add(static_cast<double>(layer_count[i]));
        const double discrepancy = std::abs((v - u) - inside.value() / total.value());
        out.discrepancies.push_back(discrepancy);
        out.max_discrepancy = std::max(out.max_discrepancy, discrepancy);
    }
    return out;
}

DistortedMeasure::DistortedMeasure(int d, Ball ball, bool allow_high_dimension)
    : d_(d), ball_(std::move(ball)), slice_{d, ball_} {
    check_d(d);
    if (d > 5 && !allow_high_dimension)
        throw std::invalid_argument(
            "DistortedMeasure: d > 5 is gated behind allow_high_dimension (grid cost)");
    if (ball_.center.size() != static_cast<std::size_t>(d))
        throw std::invalid_argument("DistortedMeasure: ball center dimension mismatch");
    if (!(ball_.radius > 0.0)) throw std::invalid_argument("DistortedMeasure: radius must be > 0");
    capacity_ = ball_capacity(d, ball_.radius);
}

double DistortedMeasure::f(double t) const {
    const double dd = static_cast<double>(d_);
    return std::pow(t, (dd - 2.0) / dd);
}

double DistortedMeasure::fprime(double t) const {
    const double dd = static_cast<double>(d_);
    return (dd - 2.0) / dd * std::pow(t, -2.0 / dd);
}

double DistortedMeasure::weight_at_s(double s) const {
    const double dd = static_cast<double>(d_);
    return dd / (dd - 2.0) * std::pow(s, 2.0 / dd);
}

double DistortedMeasure::weight(const std::vector<double>& x) const {
    return weight_at_s(slice_.value(x));
}

double DistortedMeasure::slab_mass(double x1_lo, double x1_hi) const {
    if (x1_hi < x1_lo) throw std::invalid_argument("slab_mass: inverted slab");
    // Layer integral: the slice map pushes the normalized measure to
    // Lebesgue, so the slab integral of f'(s) telescopes to f increments.
    return capacity_ * (f(slice_.value_at_x1(x1_hi)) - f(slice_.value_at_x1(x1_lo)));
}

double DistortedMeasure::cube_mass(const Box& cube) const {
    if (cube.dim() != static_cast<std::size_t>(d_))
        throw std::invalid_argument("cube_mass: dimension mismatch");
    double cross = 1.0;
    double far2 = 0.0;
    for (int k = 0; k < d_; ++k) {
        cross *= cube.hi[k] - cube.lo[k];
        const double m =
            std::max(std::abs(cube.lo[k] - ball_.center[k]), std::abs(cube.hi[k] - ball_.center[k]));
        far2 += m * m;
    }
    if (far2 > ball_.radius * ball_.radius * (1.0 + 1e-12))
        throw std::invalid_argument("cube_mass: box must lie inside the closed ball");
    cross /= cube.hi[0] - cube.lo[0];

    const auto integrand = [this](double x1) { return fprime(slice_.value_at_x1(x1)); };
    double err = 0.0;
    const double one_d = GK::integrate(integrand, cube.lo[0], cube.hi[0], 12, 1e-13, &err);
    return capacity_ * cross * one_d / ball_volume(d_, ball_.radius);
}

DistortedGrid::DistortedGrid(const DistortedMeasure& measure,
                             const std::vector<std::int64_t>& resolution)
    : d_(measure.dimension()), capacity_(measure.capacity()) {
    const Ball& ball = measure.ball();
    if (resolution.size() != static_cast<std::size_t>(d_))
        throw std::invalid_argument("DistortedGrid: resolution/dimension mismatch");
    Box bb;
    bb.lo.resize(d_);
    bb.hi.resize(d_);
    for (int k = 0; k < d_; ++k) {
        bb.lo[k] = ball.center[k] - ball.radius;
        bb.hi[k] = ball.center[k] + ball.radius;
    }
    geom_ = GridGeometry{bb, resolution};
    const std::int64_t n = geom_.cell_count();
    if (n > 8'000'000) throw std::invalid_argument("DistortedGrid: grid too large");
    cellvol_ = geom_.cell_volume();

    in_ball_.assign(static_cast<std::size_t>(n), 0);
    cell_mu_.assign(static_cast<std::size_t>(n), 0.0);

    const std::int64_t n1 = resolution[0];
    std::int64_t transverse = 1;
    for (int k = 1; k < d_; ++k) transverse *= resolution[k];

    slab_cell_count_.assign(static_cast<std::size_t>(n1), 0);
    std::vector<double> width(d_);
    for (int k = 0; k < d_; ++k)
        width[k] = (bb.hi[k] - bb.lo[k]) / static_cast<double>(resolution[k]);

    std::int64_t in_count = 0;
    for (std::int64_t i = 0; i < n1; ++i) {
        const double x1 = bb.lo[0] + (i + 0.5) * width[0];
        const double dx1 = x1 - ball.center[0];
        const double rem2 = ball.radius * ball.radius - dx1 * dx1;
        for (std::int64_t t = 0; t < transverse; ++t) {
            double s2 = 0.0;
            std::int64_t rest = t;
            for (int k = d_ - 1; k >= 1; --k) {
                const std::int64_t ik = rest % resolution[k];
                rest /= resolution[k];
                const double c = bb.lo[k] + (ik + 0.5) * width[k] - ball.center[k];
                s2 += c * c;
            }
            if (s2 < rem2) {
                in_ball_[static_cast<std::size_t>(i * transverse + t)] = 1;
                ++slab_cell_count_[static_cast<std::size_t>(i)];
                ++in_count;
            }
        }
    }
    if (in_count == 0) throw std::invalid_argument("DistortedGrid: no cells inside the ball");
    lebesgue_total_ = static_cast<double>(in_count) * cellvol_;

    // Discrete pushforward: slab k owns the cumulative-mass interval
    // [u_{k-1}, u_k]; its distorted mass cap*(f(u_k)-f(u_{k-1})) is split
    // evenly among its cells. Exact total, exact sublevel masses.
    slab_cum_fraction_.assign(static_cast<std::size_t>(n1) + 1, 0.0);
    std::int64_t running = 0;
    for (std::int64_t i = 0; i < n1; ++i) {
        running += slab_cell_count_[static_cast<std::size_t>(i)];
        slab_cum_fraction_[static_cast<std::size_t>(i) + 1] =
            static_cast<double>(running) / static_cast<double>(in_count);
    }
    const double dd = static_cast<double>(d_);
    for (std::int64_t i = 0; i < n1; ++i) {
        const std::int64_t cnt = slab_cell_count_[static_cast<std::size_t>(i)];
        if (cnt == 0) continue;
        const double df = std::pow(slab_cum_fraction_[static_cast<std::size_t>(i) + 1], (dd - 2.0) / dd) -
                          std::pow(slab_cum_fraction_[static_cast<std::size_t>(i)], (dd - 2.0) / dd);
        const double per_cell = capacity_ * df / static_cast<double>(cnt);
        for (std::int64_t t = 0; t < transverse; ++t) {
            const std::size_t idx = static_cast<std::size_t>(i * transverse + t);
            if (in_ball_[idx]) cell_mu_[idx] = per_cell;
        }
    }
}

DistortedGrid::BoxMasses DistortedGrid::box_masses(const Box& region) const {
    const auto& res = geom_.resolution;
    std::vector<std::int64_t> lo(d_), hi(d_);
    for (int k = 0; k < d_; ++k) {
        const double w = (geom_.box.hi[k] - geom_.box.lo[k]) / static_cast<double>(res[k]);
        // Cells whose center lies in [region.lo, region.hi).
        const double a = (region.lo[k] - geom_.box.lo[k]) / w - 0.5;
        const double b = (region.hi[k] - geom_.box.lo[k]) / w - 0.5;
        std::int64_t hi_k = static_cast<std::int64_t>(std::floor(b));
        if (std::floor(b) == b) hi_k -= 1;  // half-open upper edge
        lo[k] = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::ceil(a)));
        hi[k] = std::min<std::int64_t>(res[k] - 1, hi_k);
        if (lo[k] > hi[k]) return {};
    }

    KahanSum leb, mu;
    std::vector<std::int64_t> idx(lo);
    while (true) {
        std::int64_t flat = 0;
        for (int k = 0; k < d_; ++k) flat = flat * res[k] + idx[k];
        if (in_ball_[static_cast<std::size_t>(flat)]) {
            leb.add(cellvol_);
            mu.add(cell_mu_[static_cast<std::size_t>(flat)]);
        }
        int k = d_;
        bool done = true;
        while (k-- > 0) {
            if (++idx[k] <= hi[k]) {
                done = false;
                break;
            }
            idx[k] = lo[k];
        }
        if (done) break;
    }
    return {leb.value() / lebesgue_total_, mu.value()};
}

DistortedGrid::BoxMasses DistortedGrid::leading_slabs(std::size_t k) const {
    if (k > slab_cell_count_.size()) throw std::out_of_range("leading_slabs: too many slabs");
    std::int64_t cells = 0;
    for (std::size_t i = 0; i < k; ++i) cells += slab_cell_count_[i];
    const double frac = slab_cum_fraction_[k];
    const double dd = static_cast<double>(d_);
    return {static_cast<double>(cells) * cellvol_ / lebesgue_total_,
            capacity_ * std::pow(frac, (dd - 2.0) / dd)};
}

DominanceReport capacity_dominance_check(const DistortedGrid& grid,
                                         const std::vector<Box>& regions) {
    DominanceReport out;
    out.min_margin = std::numeric_limits<double>::infinity();
    const double e = 1.0 - 2.0 / static_cast<double>(grid.geometry().dim());
    for (const Box& region : regions) {
        const auto m = grid.box_masses(region);
        const double bound = grid.capacity() * std::pow(m.lebesgue_fraction, e);
        const double margin = bound - m.mu;
        out.margins.push_back(margin);
        out.min_margin = std::min(out.min_margin, margin);
    }
    return out;
}

double weight_level_offset(int d, double delta) {
    check_d(d);
    const double dd = static_cast<double>(d);
    const double target = (dd - 2.0) * std::pow(delta / dd, dd / 2.0);
    if (!(target > 0.0) || !(target < 1.0))
        throw std::domain_error("weight_level_offset: (d-2)(delta/d)^{d/2} outside (0,1)");
    return 1.0 + ball_slice_inverse(d, target);
}

SubcubeRatio subcube_mass_ratio(const DistortedMeasure& measure, const Box& cube, double delta) {
    if (!(delta > 0.0)) throw std::invalid_argument("subcube_mass_ratio: delta must be > 0");
    SubcubeRatio out;
    out.q = measure.cube_mass(cube) / measure.total_mass();
    if (!(out.q > 0.0 && out.q < 1.0))
        throw std::logic_error("subcube_mass_ratio: q must lie in (0,1)");
    const double dd = static_cast<double>(measure.dimension());
    out.kappa = delta * out.q * (dd - 2.0) / dd;
    if (!(out.kappa > 0.0 && out.kappa < 1.0))
        throw std::domain_error("subcube_mass_ratio: kappa outside (0,1)");
    return out;
}

Box transfer_subcube(const Ball& ball) {
    const int d = static_cast<int>(ball.center.size());
    const double h = ball.radius / (2.0 * std::sqrt(static_cast<double>(d)));
    Box cube;
    cube.lo.resize(d);
    cube.hi.resize(d);
    for (int k = 0; k < d; ++k) {
        cube.lo[k] = ball.center[k];
        cube.hi[k] = ball.center[k] + 2.0 * h;
    }
    return cube;
}

TransferCheck rearrangement_transfer_check(const DistortedMeasure& measure,
                                           const std::vector<double>& slab_values, double t,
                                           double delta, double tol) {
    const int d = measure.dimension();
    const double dd = static_cast<double>(d);
    if (slab_values.empty())
        throw std::invalid_argument("rearrangement_transfer_check: no slab values");
    for (double v : slab_values)
        if (v < 0.0) throw std::invalid_argument("rearrangement_transfer_check: negative field");
    if (!(t > 0.0) || !(t < 1.0))
        throw std::invalid_argument("rearrangement_transfer_check: t must lie in (0,1)");
    if (weight_level_offset(d, delta) > 1.0 - 1.0 / std::sqrt(dd))
        throw std::invalid_argument(
            "rearrangement_transfer_check: delta too large, inscribed cube leaves the "
            "high-weight region");

    const Box cube = transfer_subcube(measure.ball());
    const auto ratio = subcube_mass_ratio(measure, cube, delta);

    // Rearrangement of W on the sub-cube w.r.t. Lebesgue: slabs carry equal
    // volume, so the inclusive rearrangement at mass fraction t is the
    // largest value whose superlevel slab count reaches t*K.
    const std::size_t K = slab_values.size();
    std::vector<double> sorted(slab_values);
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    double cube_rearr = 0.0;
    for (std::size_t i = 0; i < K; ++i) {
        std::size_t count = i + 1;
        while (count < K && sorted[count] == sorted[i]) ++count;
        if (sorted[i] > 0.0 && static_cast<double>(count) / static_cast<double>(K) >= t) {
            cube_rearr = sorted[i];
            break;
        }
    }

    // Weighted field on the ball: Z = W * weight, supported on the cube,
    // constant in the transverse directions, increasing-in-x1 weight. Its
    // distorted superlevel masses reduce to 1-D integrals per slab.
    const Ball& ball = measure.ball();
    const double x_lo = cube.lo[0], x_hi = cube.hi[0];
    const double slab_w = (x_hi - x_lo) / static_cast<double>(K);
    double cross = 1.0;
    for (int k = 1; k < d; ++k) cross *= cube.hi[k] - cube.lo[k];
    const double norm = measure.capacity() / ball_volume(d, ball.radius);

    const auto superlevel_mass = [&](double v) {
        if (v <= 0.0) return measure.total_mass();
        KahanSum m;
        for (std::size_t k = 0; k < K; ++k) {
            if (slab_values[k] <= 0.0) continue;
            const double a = x_lo + static_cast<double>(k) * slab_w;
            const double b = a + slab_w;
            // Z >= v inside the slab iff weight(s(x1)) >= v / w_k.
            const double wneed = v / slab_values[k];
            const double s_need = std::pow(wneed * (dd - 2.0) / dd, dd / 2.0);
            double from = a;
            if (s_need > measure.slice().value_at_x1(b)) continue;
            if (s_need > measure.slice().value_at_x1(a)) from = measure.slice().inverse(s_need);
            double err = 0.0;
            const double integral = GK::integrate(
                [&](double x1) { return measure.fprime(measure.slice().value_at_x1(x1)); }, from, b,
                12, 1e-13, &err);
            m.add(norm * cross * integral);
        }
        return m.value();
    };

    const double target = ratio.kappa * t * measure.total_mass();
    double lo = 0.0;
    double hi = 0.0;
    for (std::size_t k = 0; k < K; ++k)
        hi = std::max(hi, slab_values[k] * measure.weight_at_s(
                                               measure.slice().value_at_x1(x_hi)));
    double ball_rearr = 0.0;
    if (hi > 0.0 && superlevel_mass(hi) < target) {
        for (int it = 0; it < 120; ++it) {
            const double mid = 0.5 * (lo + hi);
            (superlevel_mass(mid) >= target ? lo : hi) = mid;
        }
        ball_rearr = lo;
    } else if (hi > 0.0) {
        ball_rearr = hi;
    }

    TransferCheck out;
    out.kappa = ratio.kappa;
    out.q = ratio.q;
    out.lhs = ball_rearr;
    out.rhs = delta * cube_rearr;
    out.ok = out.lhs >= out.rhs - tol * std::max(1.0, out.rhs);
    return out;
}

}  // namespace specdisc
