#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "specdisc/geometry.hpp"
#include "specdisc/measure.hpp"

namespace specdisc {

/// Fraction of the unit ball in R^d left of first-coordinate offset c, for c
/// in [-1,1]. Strictly increasing, 0 at -1, 1/2 at 0, 1 at +1. Absolute
/// error <= 1e-12.
double ball_slice_fraction(int d, double c);

/// Inverse of ball_slice_fraction in c, resolved by bisection to 1e-12.
double ball_slice_inverse(int d, double u);

/// First-coordinate slice map of a ball: x -> fraction of the ball left of
/// x_1. Measure preserving from the normalized ball measure to Lebesgue on
/// [0,1]; invariant under the translate/rescale chart change.
struct SliceMap {
    int d = 3;
    Ball ball;

    double value_at_x1(double x1) const;
    double value(const std::vector<double>& x) const;
    /// x1 with value_at_x1(x1) = u.
    double inverse(double u) const;
};

struct PushforwardReport {
    std::vector<double> discrepancies;
    double max_discrepancy = 0.0;
};

/// Grid test that the slice map pushes the normalized ball measure to
/// Lebesgue measure: for each interval B, compares |B| with the grid mass of
/// the preimage slab. First-order in the grid spacing.
PushforwardReport pushforward_check(int d, const Ball& ball,
                                    const std::vector<std::int64_t>& resolution,
                                    const std::vector<std::pair<double, double>>& intervals);

/// The ball measure distorted through f(t) = t^{(d-2)/d}: density
/// capacity * f'(slice map) against normalized Lebesgue. Total mass equals
/// the ball capacity. Slab masses along the first axis are computed by the
/// exact layer integral cap*(f(s_hi)-f(s_lo)); interior boxes by 1-D
/// quadrature over the constant cross-section.
class DistortedMeasure {
public:
    DistortedMeasure(int d, Ball ball, bool allow_high_dimension = false);

    int dimension() const { return d_; }
    const Ball& ball() const { return ball_; }
    const SliceMap& slice() const { return slice_; }
    double capacity() const { return capacity_; }

    double f(double t) const;
    double fprime(double t) const;

    /// Reciprocal density (the rearrangement weight): d/(d-2) * s(x)^{2/d}.
    double weight_at_s(double s) const;
    double weight(const std::vector<double>& x) const;

    /// Mass of the full-ball slab {x1 in [lo, hi]} (exact layer integral).
    double slab_mass(double x1_lo, double x1_hi) const;
    double total_mass() const { return capacity_; }

    /// Mass of an axis-aligned box contained in the closed ball.
    double cube_mass(const Box& cube) const;

private:
    int d_;
    Ball ball_;
    SliceMap slice_;
    double capacity_;
};

/// Grid realization of a distorted measure. Cells with center in the ball
/// carry their Lebesgue volume; the distorted masses are assigned per
/// first-axis slab by layer increments of f over the slab's own cumulative
/// mass interval (a discrete pushforward). With that assignment the
/// dominance inequality mu(A) <= cap * f(lebesgue_fraction(A)) holds exactly
/// for every union of cells, with equality on sublevel slabs.
class DistortedGrid {
public:
    DistortedGrid(const DistortedMeasure& measure, const std::vector<std::int64_t>& resolution);

    const GridGeometry& geometry() const { return geom_; }
    double capacity() const { return capacity_; }
    double lebesgue_total() const { return lebesgue_total_; }

    struct BoxMasses {
        double lebesgue_fraction = 0.0;  // grid estimate of the normalized volume
        double mu = 0.0;                 // distorted mass
    };
    BoxMasses box_masses(const Box& region) const;

    /// Slab union of the first k x1-layers (a sublevel set of the discrete
    /// pushforward).
    BoxMasses leading_slabs(std::size_t k) const;
    std::size_t slab_count() const { return slab_cell_count_.size(); }

private:
    GridGeometry geom_;
    int d_;
    double capacity_ = 0.0;
    double lebesgue_total_ = 0.0;
    double cellvol_ = 0.0;
    std::vector<std::uint8_t> in_ball_;       // per cell
    std::vector<double> cell_mu_;             // per cell, 0 outside
    std::vector<std::int64_t> slab_cell_count_;
    std::vector<double> slab_cum_fraction_;   // discrete pushforward breakpoints
};

struct DominanceReport {
    std::vector<double> margins;  // cap*f(m(A)) - mu(A), >= 0 expected
    double min_margin = 0.0;
};

/// Checks the capacity-side dominance mu(A) <= cap * f(volume fraction) on a
/// family of box regions.
DominanceReport capacity_dominance_check(const DistortedGrid& grid,
                                         const std::vector<Box>& regions);

/// First-coordinate offset (in the unit chart [0,2] across the ball) at
/// which the rearrangement weight reaches delta; the weight exceeds delta
/// exactly right of this offset. Requires (d-2)*(delta/d)^{d/2} in (0,1).
double weight_level_offset(int d, double delta);

struct SubcubeRatio {
    double q = 0.0;      // distorted mass of the cube over the ball's
    double kappa = 0.0;  // delta * q * (d-2)/d
};

/// The mass-ratio constants of the ball-to-cube rearrangement transfer for a
/// box inside the ball. q is invariant under joint rescaling of ball and
/// box.
SubcubeRatio subcube_mass_ratio(const DistortedMeasure& measure, const Box& cube, double delta);

struct TransferCheck {
    double lhs = 0.0;    // weighted-field rearrangement on the ball at kappa*t
    double rhs = 0.0;    // delta * field rearrangement on the sub-cube at t
    double kappa = 0.0;
    double q = 0.0;
    bool ok = false;
};

/// Desk check of the transfer inequality: a nonnegative field W, piecewise
/// constant on `slab_values.size()` equal first-axis slabs of the canonical
/// sub-cube (zero elsewhere), is rearranged on the sub-cube w.r.t. Lebesgue,
/// and the weighted field W * weight on the ball w.r.t. the distorted
/// measure; the ball value at mass fraction kappa*t must dominate delta
/// times the cube value at fraction t. delta must satisfy
/// weight_level_offset(d, delta) <= 1 - d^{-1/2} so the inscribed cube lies
/// in the high-weight region.
TransferCheck rearrangement_transfer_check(const DistortedMeasure& measure,
                                           const std::vector<double>& slab_values, double t,
                                           double delta, double tol = 1e-9);

/// Canonical sub-cube used by the transfer check: the +orthant quarter of
/// the cube inscribed in the ball (edge r/sqrt(d)).
Box transfer_subcube(const Ball& ball);

}  // namespace specdisc
