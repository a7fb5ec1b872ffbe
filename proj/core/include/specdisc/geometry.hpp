#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "specdisc/measure.hpp"
#include "specdisc/rational.hpp"

namespace specdisc {

/// Cube centered at y with half-width r, i.e. y + r*[-1,1]^d.
struct Cube {
    std::vector<double> center;
    double halfwidth = 0.0;

    std::size_t dim() const { return center.size(); }
    Box to_box() const;
    double volume() const;
};

struct Ball {
    std::vector<double> center;
    double radius = 0.0;

    std::size_t dim() const { return center.size(); }
};

/// Bounded star-shaped domain given by a sampled radial function on the unit
/// sphere. Only the extreme radii and the eccentricity constant are consumed
/// downstream.
struct StarDomain {
    std::vector<std::vector<double>> directions;  // unit vectors
    std::vector<double> radii;                    // r(omega) > 0 per direction

    double r_max() const;
    double r_min() const;
    /// (r_max / r_min)^d  (>= 1, == 1 for a ball).
    double eccentricity() const;
};

double ball_volume(int d, double r);

/// The isocapacity constant: volume(F) <= c_d * cap(F)^{d/(d-2)}, an identity
/// on closed balls. Requires d >= 3.
double isocapacity_constant(int d);

/// Harmonic capacity of a closed ball of radius r in R^d (d >= 3), from the
/// ball case of the isocapacity identity. Scales as r^{d-2}.
double ball_capacity(int d, double r);

/// Anchors of the m-adic tiling of the cube l + [-1,1]^d at level n: m^{dn}
/// cells of half-width m^{-n}, anchors on the m^{-n} lattice, exact
/// rationals (numerators over m^n). Enumeration is guarded to d*n*log2(m)
/// <= 30 bits.
std::vector<std::vector<Rational>> madic_cells(const std::vector<std::int64_t>& l, int n, int m);

/// Cell (as a rational box) for an anchor produced by madic_cells.
RatBox madic_cell_box(const std::vector<Rational>& anchor, int n, int m);

/// Anchors of madic_cells(l, n, m) whose cell is covered by the union of
/// `region` boxes. Exact rational containment test.
std::vector<std::vector<Rational>> madic_cells_inside(const std::vector<std::int64_t>& l, int n,
                                                      int m, const std::vector<RatBox>& region);

/// Lattice of level-n cells tiling the unit-chart cube l + [0,1]^d with edge
/// m^{-n}; used by the potential/partition pipeline whose constructions are
/// written in that chart. Returns cell boxes in lexicographic order.
std::vector<RatBox> unit_chart_cells(const std::vector<std::int64_t>& l, int n, int m);

/// Those unit-chart cells covered by the union of `region` boxes.
std::vector<RatBox> unit_chart_cells_inside(const std::vector<std::int64_t>& l, int n, int m,
                                            const std::vector<RatBox>& region);

using GammaFn = std::function<double(double)>;

/// Transport of a measure-side admissibility rule to the capacity side
/// through the domain eccentricity: gamma(r) = (gamma_tilde(r)/G)^{(d-2)/d}.
GammaFn gamma_from_tilde(const GammaFn& gamma_tilde, int d, double eccentricity);

struct AdmissibilityTrace {
    std::vector<double> radii;    // 2^{-k}, k = 1..window
    std::vector<double> values;   // r^{-e} gamma(r)
    bool diverges = false;        // keeps setting fresh maxima late in the window
    bool strong = false;          // final value exceeds 1e6 * initial
    int window = 0;
};

/// Finite surrogate for the small-radius divergence requirement on gamma:
/// samples r_k = 2^{-k} for k = 1..window (default 40) and reports whether
/// the trace r^{-e} gamma(r) keeps exceeding its running maximum in the last
/// quarter of the window. A surrogate, not a proof; the window is part of
/// the result.
AdmissibilityTrace gamma_admissible(const GammaFn& gamma, double exponent, double r0,
                                    int window = 40);

}  // namespace specdisc
