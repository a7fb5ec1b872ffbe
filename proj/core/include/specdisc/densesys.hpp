#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "specdisc/rational.hpp"

namespace specdisc {

/// Cube with exact rational center and half-width.
struct RatCube {
    std::vector<Rational> center;
    Rational halfwidth;

    RatBox to_box() const;
};

/// Level-indexed family of parallelepiped unions inside an ambient cube,
/// carrying the scale base m and the inner-cube ratio theta. All geometry is
/// exact rational; Cantor constructions are exact integers over powers of 3.
struct DenseSystem {
    int dim = 1;
    int m = 3;
    Rational theta{1, 9};
    RatBox ambient;                       // unit chart: [0,1]^dim by default
    std::vector<std::vector<RatBox>> levels;  // levels[j-1] = boxes of level j

    std::size_t max_level() const { return levels.size(); }
};

struct Witness {
    int level = 0;                    // j
    RatBox parallelepiped;            // the level-j box providing the inner cube
    std::vector<Rational> inner_center;
    Rational inner_halfwidth;
};

/// Closures of the level-n adjacent intervals of the middle-thirds Cantor
/// set, left to right, exact triadic rationals. 2^{n-1} intervals of length
/// 3^{-n}.
std::vector<RatBox> cantor_adjacent_intervals(int n);

/// The Cantor adjacent-interval system on [0,1] up to max_level, a
/// (log_3, 1/9)-dense family.
DenseSystem cantor_system(int max_level);

/// Extends a system by trivial extra coordinates spanning [0,1]^extra_dims.
DenseSystem cylinder_extend(const DenseSystem& system, int extra_dims);

/// Product system: level N is the union over component level tuples with
/// maximum N of the box products. All components must share m and theta.
DenseSystem product_combine(const std::vector<DenseSystem>& systems);

/// Largest admissible witness level for a cube of half-width r: floor of
/// log_m(1/(theta r)), computed by exact comparison.
int witness_level_bound(const DenseSystem& system, const Rational& r);

/// Deterministic witness search for a cube inside the ambient cube: scans
/// levels j = 1.. and the level boxes in order, returning the first box
/// whose overlap with the cube is at least 2*theta*r wide on every axis.
/// r must lie in (0, min(1, 1/(theta m^2))).
std::optional<Witness> find_witness(const DenseSystem& system, const RatCube& cube);

/// Re-derivation of the witness conditions in exact arithmetic; used by the
/// validity invariant.
bool witness_valid(const DenseSystem& system, const RatCube& cube, const Witness& witness);

struct VerifyReport {
    std::int64_t tested = 0;
    std::int64_t failed = 0;
    struct Failure {
        std::vector<Rational> center;
        Rational halfwidth;
    };
    std::vector<Failure> failures;        // first few only
    Rational worst_halfwidth{0};          // halfwidth of the first failure, 0 if none
};

struct SamplerConfig {
    std::uint64_t seed = 1;
    std::int64_t random_samples = 10000;
    bool structured = true;  // include the triadic-endpoint adversarial families
    int r_levels = 12;       // log grid depth for half-widths
};

/// Sampled verification of the dense-system property: sweeps structured
/// (endpoint-aligned, interval-spanning) and seeded random cubes, searching
/// for witnesses. The quantifier is over uncountably many cubes, so this
/// falsifies rather than proves; cubes with half-width above 0.999 of the
/// fit limit are excluded and noted through the config.
VerifyReport verify_dense_system(const DenseSystem& system, const SamplerConfig& config);

}  // namespace specdisc
