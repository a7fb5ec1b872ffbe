#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "specdisc/densesys.hpp"
#include "specdisc/geometry.hpp"
#include "specdisc/potentials.hpp"

namespace specdisc {

using FieldFn = std::function<double(const std::vector<double>&)>;

struct TracePoint {
    double index = 0.0;  // |y| or |l|_inf, strictly increasing along the trace
    double value = 0.0;
};

/// A condition functional evaluated along a finite sequence of centers or
/// lattice cubes, with a finite-window divergence verdict. The verdict is a
/// monotone-growth surrogate, never a proof; the window travels with it.
struct ConditionTrace {
    std::string condition;  // thm35 | thm36 | thm313 | gmd
    std::vector<TracePoint> points;
    bool diverges = false;
    bool strong = false;  // final/initial growth beyond 1e6
    int window = 0;
};

/// Growth classifier shared by all traces: fresh running maxima must appear
/// in the last quarter of the window and the final value must exceed 10x the
/// initial one.
void classify_divergence(ConditionTrace& trace);

/// Embedded-cube domain used by the cover/rearrangement traces: the cube of
/// half-width 2r/sqrt(d) centered at y - r*(1,..,1)/sqrt(d).
Box embedded_cube(const std::vector<double>& y, double r);

/// Cover-value condition: the covering solver's value on the domain around
/// each center, at retained mass (1 - gamma_tilde(r)) * domain volume.
ConditionTrace cover_condition_trace(const FieldFn& V, const GammaFn& gamma_tilde,
                                     const std::vector<std::vector<double>>& centers, double r,
                                     std::int64_t res_per_axis);

/// Rearrangement-threshold condition: the non-increasing rearrangement of V
/// on the domain around each center at mass gamma_hat(r) * domain volume.
ConditionTrace rearrangement_condition_trace(const FieldFn& V, const GammaFn& gamma_hat,
                                             const std::vector<std::vector<double>>& centers,
                                             double r, std::int64_t res_per_axis);

/// m-adic minimum-rearrangement condition for the oscillating potential, on
/// the exact triadic path: for each lattice cube l, the minimum over level-n
/// cells inside the adjacent bands of levels j <= n of the rearrangement at
/// mass fraction gamma(3^{-n}). Two-valued fields make this exact: the value
/// is N(l) when the cell's positive fraction reaches the threshold, else 0.
ConditionTrace madic_condition_trace(const ValphaPotential& pot, const GammaFn& gamma, int n,
                                     const std::vector<std::vector<std::int64_t>>& l_list);

/// Same, with the rule declared as the pure power r^gamma_power. When the
/// exponent matches the potential's, cells pass by exact exponent
/// comparison and the trace values are exact amplitudes.
ConditionTrace madic_condition_trace(const ValphaPotential& pot, const GammaFn& gamma,
                                     double gamma_power, int n,
                                     const std::vector<std::vector<std::int64_t>>& l_list);

/// Generic-field variant on grids; guarded to small d and n.
ConditionTrace madic_condition_trace_grid(const FieldFn& V, const DenseSystem& system_per_cube,
                                          const GammaFn& gamma, int n,
                                          const std::vector<std::vector<std::int64_t>>& l_list,
                                          std::int64_t res_per_cell_axis);

struct LevelMassPoint {
    std::vector<double> center;
    double threshold = 0.0;  // delta * average of V over the cube
    double ratio = 0.0;      // superlevel mass over ball volume
    bool ok = false;         // ratio >= c
};

/// The averaged-superlevel criterion: mass of {V >= delta * cube average}
/// against c * ball volume, per center, on cube grids.
std::vector<LevelMassPoint> averaged_superlevel_check(const FieldFn& V, double delta, double c,
                                                      double r,
                                                      const std::vector<std::vector<double>>& centers,
                                                      std::int64_t res_per_axis);

/// Level selector of the witness machinery: floor(log_m(1/(theta r))) + 2.
int madic_level_for_radius(int m, const Rational& theta, const Rational& r);

/// Shrink constant 1/(2 d m^{2(d-1)} + 1) tying cube rearrangements to cell
/// minima.
double level_shrink_constant(int d, int m);

/// Rescaled admissibility rule K * gamma(theta * rho / m^2) * theta^d.
double rescaled_gamma(const GammaFn& gamma, double rho, double K, int m, double theta, int d);

struct MadicVsAverageReport {
    std::vector<std::int64_t> l_sup_norms;
    std::vector<double> trace_values;  // madic condition value per l
    std::vector<double> expected_amplitudes;
    bool trace_matches = false;
    std::vector<int> n_values;
    std::vector<double> ratios;           // cell positivity ratios, 3^{-alpha n}
    std::vector<Rational> ratios_exact;   // exact on the rational path
    bool ratios_exact_valid = false;
    bool ratios_decreasing = false;
};

/// First counterexample report: the oscillating potential passes the m-adic
/// condition with value N(l) exactly, while its averaged-superlevel ratios
/// on matched cells equal 3^{-alpha n} and decay to zero.
MadicVsAverageReport counterexample_madic_vs_average(double alpha, const AmplitudeRule& rule,
                                                     int n_lo, int n_hi, int madic_n,
                                                     std::int64_t l_lo, std::int64_t l_hi,
                                                     int dim = 3);

struct SmallSupportReport {
    struct Row {
        int j = 0;
        double r = 0.0;
        double threshold = 0.0;      // gamma_hat(r_j) * cube volume
        double positive_mass = 0.0;  // exact support mass of the potential on the cube
        bool rearrangement_zero = false;
        double divergence_ratio = 0.0;  // gamma_hat(r_j) / r_j^alpha
    };
    std::vector<Row> rows;
    int first_all_zero = -1;  // smallest j from which every row is zero
    bool divergence_increasing = false;
    double madic_value = 0.0;  // the same potential's m-adic condition value
    double madic_expected = 0.0;
};

/// Second counterexample report: along cubes shrinking into the leftmost
/// adjacent band, the potential's support mass stays below the
/// gamma_hat-threshold from some index on, so the rearrangement vanishes,
/// while the m-adic condition still passes for the same potential. Requires
/// alpha in (2(d-2)/d, 2).
SmallSupportReport counterexample_small_support(int d, double alpha, const GammaFn& gamma_hat,
                                                int j_lo, int j_hi);

/// Nonemptiness table for level-n cells inside the level-j sets, j <= n.
std::vector<std::vector<bool>> partition_nonempty_check(const DenseSystem& system, int n_lo,
                                                        int n_hi);

}  // namespace specdisc
