#include "specdisc/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "specdisc/optcover.hpp"
#include "specdisc/util.hpp"

namespace specdisc {

void classify_divergence(ConditionTrace& trace) {
    const auto n = trace.points.size();
    trace.window = static_cast<int>(n);
    trace.diverges = false;
    trace.strong = false;
    if (n < 4) return;
    double max_seen = trace.points.front().value;
    int late_records = 0;
    for (std::size_t i = 1; i < n; ++i) {
        if (trace.points[i].value > max_seen) {
            if (i >= 3 * n / 4) ++late_records;
            max_seen = trace.points[i].value;
        }
    }
    const double first = trace.points.front().value;
    const double last = trace.points.back().value;
    trace.diverges = late_records >= 1 && last > first;
    trace.strong = first == 0.0 ? last > 0.0 : last > 1e6 * first;
}

Box embedded_cube(const std::vector<double>& y, double r) {
    const double d = static_cast<double>(y.size());
    const double r1 = 2.0 * r / std::sqrt(d);
    const double shift = r / std::sqrt(d);
    Box box;
    box.lo.resize(y.size());
    box.hi.resize(y.size());
    for (std::size_t k = 0; k < y.size(); ++k) {
        const double c = y[k] - shift;
        box.lo[k] = c - r1;
        box.hi[k] = c + r1;
    }
    return box;
}

namespace {

void check_centers(const std::vector<std::vector<double>>& centers) {
    if (centers.empty()) throw std::invalid_argument("condition trace: no centers");
    double prev = -1.0;
    for (const auto& y : centers) {
        double norm = 0.0;
        for (double v : y) norm = std::max(norm, std::abs(v));
        if (norm <= prev)
            throw std::invalid_argument("condition trace: centers must increase in sup norm");
        prev = norm;
    }
}

double sup_norm(const std::vector<double>& y) {
    double s = 0.0;
    for (double v : y) s = std::max(s, std::abs(v));
    return s;
}

struct DomainSample {
    WeightedSpace space;
    ScalarField field;
};

DomainSample sample_on_cube(const FieldFn& V, const Box& box, std::int64_t res) {
    std::vector<std::int64_t> resolution(box.dim(), res);
    WeightedSpace space = build_grid(box, resolution, 1.0);
    ScalarField field = ScalarField::from_function(space, V);
    return {std::move(space), std::move(field)};
}

}  // namespace

ConditionTrace cover_condition_trace(const FieldFn& V, const GammaFn& gamma_tilde,
                                     const std::vector<std::vector<double>>& centers, double r,
                                     std::int64_t res_per_axis) {
    check_centers(centers);
    const double g = gamma_tilde(r);
    if (!(g > 0.0) || !(g < 1.0))
        throw std::invalid_argument("cover_condition_trace: gamma_tilde(r) must lie in (0,1)");

    ConditionTrace trace;
    trace.condition = "thm35";
    for (const auto& y : centers) {
        const Box box = embedded_cube(y, r);
        auto dom = sample_on_cube(V, box, res_per_axis);
        const double t = (1.0 - g) * box.volume();
        const double value = optimal_cover(dom.field, dom.space, t).value;
        trace.points.push_back({sup_norm(y), value});
    }
    classify_divergence(trace);
    return trace;
}

ConditionTrace rearrangement_condition_trace(const FieldFn& V, const GammaFn& gamma_hat,
                                             const std::vector<std::vector<double>>& centers,
                                             double r, std::int64_t res_per_axis) {
    check_centers(centers);
    const double g = gamma_hat(r);
    if (!(g > 0.0) || !(g < 1.0))
        throw std::invalid_argument(
            "rearrangement_condition_trace: gamma_hat(r) must lie in (0,1)");

    ConditionTrace trace;
    trace.condition = "thm36";
    for (const auto& y : centers) {
        const Box box = embedded_cube(y, r);
        auto dom = sample_on_cube(V, box, res_per_axis);
        DistributionProfile profile(dom.field, dom.space);
        const double t = g * box.volume();
        trace.points.push_back({sup_norm(y), profile.nonincreasing_value(t)});
    }
    classify_divergence(trace);
    return trace;
}

namespace {

/// Distinct first-axis level-n cells inside the level-j adjacent intervals,
/// as exact [k/3^n, (k+1)/3^n] index ranges.
std::vector<std::int64_t> level_cells_1d(int j, int n) {
    std::vector<std::int64_t> ks;
    const std::int64_t den = ipow(3, n);
    for (const RatBox& interval : cantor_adjacent_intervals(j)) {
        // Endpoints are exact triadic with denominator 3^j, j <= n.
        const Rational lo = interval.lo[0] * Rational(den);
        const Rational hi = interval.hi[0] * Rational(den);
        for (std::int64_t k = lo.floor(); k < hi.floor(); ++k) ks.push_back(k);
    }
    return ks;
}

}  // namespace

ConditionTrace madic_condition_trace(const ValphaPotential& pot, const GammaFn& gamma, int n,
                                     const std::vector<std::vector<std::int64_t>>& l_list) {
    return madic_condition_trace(pot, gamma, std::numeric_limits<double>::quiet_NaN(), n, l_list);
}

ConditionTrace madic_condition_trace(const ValphaPotential& pot, const GammaFn& gamma,
                                     double gamma_power, int n,
                                     const std::vector<std::vector<std::int64_t>>& l_list) {
    if (n < 1 || n > 12) throw std::invalid_argument("madic_condition_trace: n out of range");
    if (l_list.empty()) throw std::invalid_argument("madic_condition_trace: no lattice cubes");

    const double threshold = gamma(std::pow(3.0, -n));
    if (!(threshold > 0.0) || !(threshold < 1.0))
        throw std::invalid_argument("madic_condition_trace: gamma(3^{-n}) must lie in (0,1)");
    // When gamma is the pure power rule with the potential's own exponent,
    // the cell fraction 3^{-alpha j} meets the threshold 3^{-alpha n} if and
    // only if j <= n; the comparison is exact by exponents, no rounding.
    const bool structural = gamma_power == pot.alpha();

    ConditionTrace trace;
    trace.condition = "thm313";
    const std::int64_t den = ipow(3, n);

    for (const auto& l : l_list) {
        std::int64_t sup = 0;
        for (auto v : l) sup = std::max(sup, std::abs(v));
        const double amplitude = pot.rule()(l);
        const int p = static_cast<int>(sup) + 1;
        const Rational S(ipow(3, p), 1);

        // The potential varies only along the first axis, and the adjacent
        // bands have full transverse extent, so the minimum over the cell
        // partition reduces to the distinct first-axis cells.
        double minimum = std::numeric_limits<double>::infinity();
        for (int j = 1; j <= n; ++j) {
            const auto cells = level_cells_1d(j, n);
            if (cells.empty())
                throw std::invalid_argument("madic_condition_trace: empty level partition");
            if (structural && sup > n) {
                // Aligned cells all carry fraction 3^{-alpha j} >= threshold.
                minimum = std::min(minimum, amplitude);
                continue;
            }
            const double beta = std::pow(3.0, -pot.alpha() * j);
            for (std::int64_t k : cells) {
                const Rational a(k, den), b(k + 1, den);
                const double support =
                    indicator_measure(S.to_double(), beta, a.to_double(), b.to_double());
                const double fraction = support * static_cast<double>(den);
                const bool passes = structural ? fraction >= threshold * (1.0 - 1e-12)
                                               : fraction >= threshold;
                minimum = std::min(minimum, passes ? amplitude : 0.0);
            }
        }
        trace.points.push_back({static_cast<double>(sup), minimum});
    }
    classify_divergence(trace);
    return trace;
}

ConditionTrace madic_condition_trace_grid(const FieldFn& V, const DenseSystem& system_per_cube,
                                          const GammaFn& gamma, int n,
                                          const std::vector<std::vector<std::int64_t>>& l_list,
                                          std::int64_t res_per_cell_axis) {
    if (n < 1) throw std::invalid_argument("madic_condition_trace_grid: n must be >= 1");
    const int d = system_per_cube.dim;
    if (static_cast<double>(d) * n * std::log2(3.0) > 16.0)
        throw std::invalid_argument("madic_condition_trace_grid: cell enumeration too large");

    const double threshold = gamma(std::pow(3.0, -n));
    if (!(threshold > 0.0) || !(threshold < 1.0))
        throw std::invalid_argument("madic_condition_trace_grid: gamma(3^{-n}) must lie in (0,1)");

    ConditionTrace trace;
    trace.condition = "thm313";
    for (const auto& l : l_list) {
        if (static_cast<int>(l.size()) != d)
            throw std::invalid_argument("madic_condition_trace_grid: l dimension mismatch");
        double sup = 0.0;
        for (auto v : l) sup = std::max(sup, static_cast<double>(std::abs(v)));

        double minimum = std::numeric_limits<double>::infinity();
        for (int j = 1; j <= n; ++j) {
            // Translate the per-cube system by l and collect covered cells.
            std::vector<RatBox> region = system_per_cube.levels.at(static_cast<std::size_t>(j - 1));
            for (auto& box : region)
                for (int k = 0; k < d; ++k) {
                    box.lo[static_cast<std::size_t>(k)] += Rational(l[static_cast<std::size_t>(k)]);
                    box.hi[static_cast<std::size_t>(k)] += Rational(l[static_cast<std::size_t>(k)]);
                }
            const auto cells = unit_chart_cells_inside(l, n, 3, region);
            if (cells.empty())
                throw std::invalid_argument("madic_condition_trace_grid: empty level partition");
            for (const RatBox& cell : cells) {
                Box fb;
                for (std::size_t k = 0; k < cell.lo.size(); ++k) {
                    fb.lo.push_back(cell.lo[k].to_double());
                    fb.hi.push_back(cell.hi[k].to_double());
                }
                auto dom = sample_on_cube(V, fb, res_per_cell_axis);
                DistributionProfile profile(dom.field, dom.space);
                minimum =
                    std::min(minimum, profile.nonincreasing_value(threshold * fb.volume()));
            }
        }
        trace.points.push_back({sup, minimum});
    }
    classify_divergence(trace);
    return trace;
}

std::vector<LevelMassPoint> averaged_superlevel_check(
    const FieldFn& V, double delta, double c, double r,
    const std::vector<std::vector<double>>& centers, std::int64_t res_per_axis) {
    if (!(delta > 0.0)) throw std::invalid_argument("averaged_superlevel_check: delta must be > 0");
    if (!(c > 0.0) || !(c < 1.0))
        throw std::invalid_argument("averaged_superlevel_check: c must lie in (0,1)");

    std::vector<LevelMassPoint> out;
    for (const auto& y : centers) {
        Box box;
        for (double v : y) {
            box.lo.push_back(v - r);
            box.hi.push_back(v + r);
        }
        auto dom = sample_on_cube(V, box, res_per_axis);
        KahanSum integral;
        for (std::size_t i = 0; i < dom.space.size(); ++i)
            integral.add(dom.field[i] * dom.space.atoms()[i].mass);
        const double threshold = delta / box.volume() * integral.value();

        DistributionProfile profile(dom.field, dom.space);
        const double mass = profile.mass_above(threshold);
        LevelMassPoint point;
        point.center = y;
        point.threshold = threshold;
        point.ratio = mass / ball_volume(static_cast<int>(y.size()), r);
        point.ok = point.ratio >= c;
        out.push_back(std::move(point));
    }
    return out;
}

int madic_level_for_radius(int m, const Rational& theta, const Rational& r) {
    if (m < 2) throw std::invalid_argument("madic_level_for_radius: m must be >= 2");
    if (!(r > Rational(0))) throw std::invalid_argument("madic_level_for_radius: r must be > 0");
    int j = 0;
    Rational power(1);
    while (j < 36) {
        power *= Rational(m);
        if (power * theta * r > Rational(1)) break;
        ++j;
    }
    return j + 2;
}

double level_shrink_constant(int d, int m) {
    if (d < 1 || m < 2) throw std::invalid_argument("level_shrink_constant: bad arguments");
    return 1.0 / (2.0 * d * std::pow(static_cast<double>(m), 2.0 * (d - 1)) + 1.0);
}

double rescaled_gamma(const GammaFn& gamma, double rho, double K, int m, double theta, int d) {
    return K * gamma(theta * rho / static_cast<double>(m * m)) *
           std::pow(theta, static_cast<double>(d));
}

MadicVsAverageReport counterexample_madic_vs_average(double alpha, const AmplitudeRule& rule,
                                                     int n_lo, int n_hi, int madic_n,
                                                     std::int64_t l_lo, std::int64_t l_hi,
                                                     int dim) {
    if (n_lo < 1 || n_hi < n_lo)
        throw std::invalid_argument("counterexample_madic_vs_average: bad n range");
    ValphaPotential pot(dim, alpha, rule);

    MadicVsAverageReport report;

    // Part (a): the m-adic condition value equals N(l) exactly along the
    // lattice ray (l,0,..,0).
    std::vector<std::vector<std::int64_t>> l_list;
    for (std::int64_t l = l_lo; l <= l_hi; ++l) {
        std::vector<std::int64_t> vec(static_cast<std::size_t>(dim), 0);
        vec[0] = l;
        l_list.push_back(std::move(vec));
    }
    const GammaFn power_rule = [alpha](double r) { return std::pow(r, alpha); };
    const ConditionTrace trace = madic_condition_trace(pot, power_rule, alpha, madic_n, l_list);
    report.trace_matches = true;
    for (std::size_t i = 0; i < l_list.size(); ++i) {
        report.l_sup_norms.push_back(std::abs(l_list[i][0]));
        report.trace_values.push_back(trace.points[i].value);
        report.expected_amplitudes.push_back(rule(l_list[i]));
        if (trace.points[i].value != report.expected_amplitudes.back())
            report.trace_matches = false;
    }

    // Part (b): the averaged-superlevel ratios on matched cells equal the
    // positive fraction 3^{-alpha n}, strictly decreasing to zero.
    report.ratios_exact_valid = true;
    for (int n = n_lo; n <= n_hi; ++n) {
        std::vector<std::int64_t> l(static_cast<std::size_t>(dim), 0);
        l[0] = n + 1;  // keeps the period alignment hypothesis |l| > n
        const CellFraction frac = cell_positive_fraction(pot, l, n, n);
        report.n_values.push_back(n);
        report.ratios.push_back(frac.measured);
        if (frac.exact_path) {
            report.ratios_exact.push_back(frac.measured_exact);
        } else {
            report.ratios_exact_valid = false;
            report.ratios_exact.push_back(Rational(0));
        }
    }
    report.ratios_decreasing = true;
    for (std::size_t i = 1; i < report.ratios.size(); ++i)
        if (!(report.ratios[i] < report.ratios[i - 1])) report.ratios_decreasing = false;
    return report;
}

SmallSupportReport counterexample_small_support(int d, double alpha, const GammaFn& gamma_hat,
                                                int j_lo, int j_hi) {
    const double lower = 2.0 * (static_cast<double>(d) - 2.0) / static_cast<double>(d);
    if (!(alpha > lower) || !(alpha < 2.0))
        throw std::invalid_argument(
            "counterexample_small_support: alpha must lie in (2(d-2)/d, 2)");
    if (j_lo < 1 || j_hi < j_lo)
        throw std::invalid_argument("counterexample_small_support: bad j range");

    ValphaPotential pot(d, alpha, AmplitudeRule::one_plus_sup_norm());
    SmallSupportReport report;

    for (int j = j_lo; j <= j_hi; ++j) {
        // Shrinking cubes pinned at the left end of the leftmost adjacent
        // interval of level j, translated j cells out along the first axis.
        const int nj = j;
        const Rational rj = Rational(2, ipow(3, nj + 1));
        const Rational a = Rational(1, ipow(3, nj));
        const std::int64_t l = nj;
        const int p = static_cast<int>(l) + 1;
        const Rational S(ipow(3, p), 1);

        // First-coordinate support measure inside [a, a+r]; the interval
        // stays within the level-n_j adjacent band, whose duty cycle is
        // 3^{-alpha n_j}.
        const double beta = std::pow(3.0, -alpha * nj);
        double support_1d;
        const double aj = alpha * nj;
        if (aj == std::floor(aj)) {
            const Rational beta_exact(1, ipow(3, static_cast<int>(aj)));
            support_1d = indicator_measure(S, beta_exact, a, a + rj).to_double();
        } else {
            support_1d = indicator_measure(S.to_double(), beta, a.to_double(), (a + rj).to_double());
        }
        const double r = rj.to_double();
        const double positive_mass = support_1d * std::pow(r, d - 1);
        const double threshold = gamma_hat(r) * std::pow(r, d);

        SmallSupportReport::Row row;
        row.j = j;
        row.r = r;
        row.threshold = threshold;
        row.positive_mass = positive_mass;
        row.rearrangement_zero = positive_mass < threshold;
        row.divergence_ratio = gamma_hat(r) / std::pow(r, alpha);
        report.rows.push_back(row);
    }

    report.first_all_zero = -1;
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        bool all = true;
        for (std::size_t k = i; k < report.rows.size(); ++k)
            if (!report.rows[k].rearrangement_zero) all = false;
        if (all) {
            report.first_all_zero = report.rows[i].j;
            break;
        }
    }
    report.divergence_increasing = true;
    for (std::size_t i = 1; i < report.rows.size(); ++i)
        if (!(report.rows[i].divergence_ratio > report.rows[i - 1].divergence_ratio))
            report.divergence_increasing = false;

    // The same potential still passes the m-adic condition.
    std::vector<std::int64_t> l(static_cast<std::size_t>(d), 0);
    l[0] = 4;
    const GammaFn power_rule = [alpha](double r) { return std::pow(r, alpha); };
    const ConditionTrace trace = madic_condition_trace(pot, power_rule, alpha, 2, {l});
    report.madic_value = trace.points.front().value;
    report.madic_expected = pot.rule()(l);
    return report;
}

std::vector<std::vector<bool>> partition_nonempty_check(const DenseSystem& system, int n_lo,
                                                        int n_hi) {
    if (n_lo < 1 || n_hi < n_lo)
        throw std::invalid_argument("partition_nonempty_check: bad n range");
    std::vector<std::vector<bool>> table;
    const std::vector<std::int64_t> origin(static_cast<std::size_t>(system.dim), 0);
    for (int n = n_lo; n <= n_hi; ++n) {
        std::vector<bool> row;
        for (int j = 1; j <= n; ++j) {
            if (static_cast<std::size_t>(j) > system.max_level()) {
                row.push_back(false);
                continue;
            }
            const auto cells = unit_chart_cells_inside(
                origin, n, system.m, system.levels[static_cast<std::size_t>(j - 1)]);
            row.push_back(!cells.empty());
        }
        table.push_back(std::move(row));
    }
    return table;
}

}  // namespace specdisc
