#include "specdisc/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "specdisc/util.hpp"

namespace specdisc {

double periodic_indicator(double beta, double x) {
    if (!(beta > 0.0) || !(beta < 1.0))
        throw std::invalid_argument("periodic_indicator: beta must lie in (0,1)");
    double frac = x - std::floor(x);
    if (frac == 0.0) frac = 1.0;  // representative of x in (0,1]
    return (frac <= beta) ? 1.0 : 0.0;
}

bool periodic_indicator_positive(const Rational& beta, const Rational& x) {
    if (!(beta > Rational(0)) || !(beta < Rational(1)))
        throw std::invalid_argument("periodic_indicator_positive: beta must lie in (0,1)");
    Rational frac = x - Rational(x.floor());
    if (frac == Rational(0)) frac = Rational(1);
    return frac <= beta;
}

int cantor_level(double t, int max_depth) {
    if (!(t > 0.0) || t > 1.0) throw std::invalid_argument("cantor_level: t outside (0,1]");
    double u = t;
    for (int depth = 1; depth <= max_depth; ++depth) {
        if (u >= 1.0 / 3.0 && u <= 2.0 / 3.0) return depth;
        u = (u < 1.0 / 3.0) ? 3.0 * u : 3.0 * u - 2.0;
    }
    return 0;
}

int cantor_level_exact(const Rational& t, int max_depth) {
    if (!(t > Rational(0)) || t > Rational(1))
        throw std::invalid_argument("cantor_level_exact: t outside (0,1]");
    Rational u = t;
    const Rational third(1, 3), two_thirds(2, 3);
    for (int depth = 1; depth <= max_depth; ++depth) {
        if (u >= third && u <= two_thirds) return depth;
        u = (u < third) ? u * Rational(3) : u * Rational(3) - Rational(2);
    }
    return 0;
}

double comb_profile(double amplitude, int p, double alpha, double x) {
    if (!(amplitude > 0.0)) throw std::invalid_argument("comb_profile: amplitude must be > 0");
    if (p < 1) throw std::invalid_argument("comb_profile: p must be >= 1");
    if (!(alpha > 0.0) || !(alpha < 2.0))
        throw std::invalid_argument("comb_profile: alpha must lie in (0,2)");
    if (!(x > 0.0) || x > 1.0) throw std::invalid_argument("comb_profile: x outside (0,1]");

    const int n = cantor_level(x);
    if (n == 0) return 0.0;
    const double beta = std::pow(3.0, -alpha * static_cast<double>(n));
    return amplitude * periodic_indicator(beta, std::pow(3.0, p) * x);
}

double AmplitudeRule::operator()(const std::vector<std::int64_t>& l) const {
    const double v = fn(l);
    if (!(v >= 1.0)) throw std::logic_error("AmplitudeRule: N(l) must be >= 1");
    return v;
}

namespace {
std::int64_t sup_norm_of(const std::vector<std::int64_t>& l) {
    std::int64_t s = 0;
    for (auto v : l) s = std::max(s, std::abs(v));
    return s;
}
}  // namespace

AmplitudeRule AmplitudeRule::sup_norm() {
    return {"linf", [](const std::vector<std::int64_t>& l) {
                return std::max<double>(1.0, static_cast<double>(sup_norm_of(l)));
            }};
}

AmplitudeRule AmplitudeRule::one_plus_sup_norm() {
    return {"one-plus-linf", [](const std::vector<std::int64_t>& l) {
                return 1.0 + static_cast<double>(sup_norm_of(l));
            }};
}

AmplitudeRule AmplitudeRule::log_rule() {
    return {"log", [](const std::vector<std::int64_t>& l) {
                return 1.0 + std::log(1.0 + static_cast<double>(sup_norm_of(l)));
            }};
}

AmplitudeRule AmplitudeRule::sqrt_rule() {
    return {"sqrt", [](const std::vector<std::int64_t>& l) {
                return 1.0 + std::sqrt(static_cast<double>(sup_norm_of(l)));
            }};
}

AmplitudeRule AmplitudeRule::table(std::map<std::vector<std::int64_t>, double> values,
                                   double fallback) {
    return {"custom-table",
            [values = std::move(values), fallback](const std::vector<std::int64_t>& l) {
                const auto it = values.find(l);
                return it != values.end() ? it->second : fallback;
            }};
}

AmplitudeRule AmplitudeRule::by_name(const std::string& name) {
    if (name == "linf") return sup_norm();
    if (name == "one-plus-linf") return one_plus_sup_norm();
    if (name == "log") return log_rule();
    if (name == "sqrt") return sqrt_rule();
    throw std::invalid_argument("AmplitudeRule: unknown rule '" + name + "'");
}

ValphaPotential::ValphaPotential(int dim, double alpha, AmplitudeRule rule)
    : dim_(dim), alpha_(alpha), rule_(std::move(rule)) {
    if (dim < 1) throw std::invalid_argument("ValphaPotential: dim must be >= 1");
    if (!(alpha > 0.0) || !(alpha < 2.0))
        throw std::invalid_argument("ValphaPotential: alpha must lie in (0,2)");
}

ValphaPotential::CellInfo ValphaPotential::locate(const std::vector<double>& x) const {
    if (x.size() != static_cast<std::size_t>(dim_))
        throw std::invalid_argument("ValphaPotential: point dimension mismatch");
    CellInfo info;
    info.l.resize(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double fl = std::floor(x[k]);
        // Lattice points belong to the lexicographically smaller cube.
        info.l[k] = static_cast<std::int64_t>(fl) - (x[k] == fl ? 1 : 0);
    }
    info.sup_norm = sup_norm_of(info.l);
    if (info.sup_norm > 35) throw std::invalid_argument("ValphaPotential: |l|_inf too large");
    info.amplitude = rule_(info.l);
    info.p = static_cast<int>(info.sup_norm) + 1;
    return info;
}

double ValphaPotential::operator()(const std::vector<double>& x) const {
    const CellInfo info = locate(x);
    const double t = x[0] - static_cast<double>(info.l[0]);
    return comb_profile(info.amplitude, info.p, alpha_, t);
}

namespace {

// Measure of {u in [0, v] : frac(u) in (0, beta]} for v >= 0.
Rational period_cdf(const Rational& beta, const Rational& v) {
    const Rational fl(v.floor());
    const Rational frac = v - fl;
    return fl * beta + std::min(frac, beta);
}

double period_cdf(double beta, double v) {
    const double fl = std::floor(v);
    return fl * beta + std::min(v - fl, beta);
}

}  // namespace

Rational indicator_measure(const Rational& S, const Rational& beta, const Rational& a,
                           const Rational& b) {
    if (!(S > Rational(0))) throw std::invalid_argument("indicator_measure: S must be > 0");
    if (b < a) throw std::invalid_argument("indicator_measure: inverted interval");
    Rational sa = S * a, sb = S * b;
    // Shift into the nonnegative range; the indicator is 1-periodic.
    const std::int64_t shift = sa < Rational(0) ? -sa.floor() : 0;
    sa += Rational(shift);
    sb += Rational(shift);
    return (period_cdf(beta, sb) - period_cdf(beta, sa)) / S;
}

double indicator_measure(double S, double beta, double a, double b) {
    if (!(S > 0.0)) throw std::invalid_argument("indicator_measure: S must be > 0");
    if (b < a) throw std::invalid_argument("indicator_measure: inverted interval");
    double sa = S * a, sb = S * b;
    const double shift = sa < 0.0 ? -std::floor(sa) : 0.0;
    return (period_cdf(beta, sb + shift) - period_cdf(beta, sa + shift)) / S;
}

CellFraction cell_positive_fraction(const ValphaPotential& pot,
                                    const std::vector<std::int64_t>& l, int j, int n) {
    if (j < 1 || j > n) throw std::invalid_argument("cell_positive_fraction: need 1 <= j <= n");
    if (n > 18) throw std::invalid_argument("cell_positive_fraction: n too large");
    if (static_cast<int>(l.size()) != pot.dim())
        throw std::invalid_argument("cell_positive_fraction: l dimension mismatch");
    std::int64_t sup = 0;
    for (auto v : l) sup = std::max(sup, std::abs(v));
    if (!(sup > n))
        throw std::invalid_argument("cell_positive_fraction: requires |l|_inf > n");
    if (sup + 1 > 35) throw std::invalid_argument("cell_positive_fraction: |l|_inf too large");

    const double alpha = pot.alpha();
    const int p = static_cast<int>(sup) + 1;

    // Canonical cell: the leftmost level-n cell inside the leftmost level-j
    // adjacent interval [3^-j, 2*3^-j].
    const std::int64_t den = ipow(3, n);
    const Rational a(ipow(3, n - j), den);
    const Rational b(ipow(3, n - j) + 1, den);
    const Rational S(ipow(3, static_cast<int>(p)), 1);

    CellFraction out;
    const double aj = alpha * static_cast<double>(j);
    out.analytic = std::pow(3.0, -aj);
    out.exact_path = (aj == std::floor(aj));

    if (out.exact_path) {
        const Rational beta(1, ipow(3, static_cast<int>(aj)));
        out.analytic_exact = beta;
        const Rational mass = indicator_measure(S, beta, a, b);
        out.measured_exact = mass / (b - a);
        out.measured = out.measured_exact.to_double();
    } else {
        // The cell endpoints scale to integers (S*(b-a) is a whole number of
        // periods), so the duty cycle factors out of the count exactly.
        const double beta = out.analytic;
        const Rational sa = S * a, sb = S * b;
        const Rational full(sb.floor() - sa.floor());
        const Rational coeff = full / S / (b - a);  // == 1 on aligned cells
        const double frac_a = (sa - Rational(sa.floor())).to_double();
        const double frac_b = (sb - Rational(sb.floor())).to_double();
        const double partial = (std::min(frac_b, beta) - std::min(frac_a, beta)) /
                               S.to_double() / (b - a).to_double();
        out.measured = coeff.to_double() * beta + partial;
    }
    return out;
}

}  // namespace specdisc
