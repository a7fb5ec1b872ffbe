#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "specdisc/rational.hpp"

namespace specdisc {

/// 1-periodic indicator: 1 on (0, beta], 0 on (beta, 1], extended
/// periodically. Half-open on the left by construction, so the value at
/// integers is 0 (for beta < 1).
double periodic_indicator(double beta, double x);

/// Exact version on rationals: is the periodic indicator positive at x?
bool periodic_indicator_positive(const Rational& beta, const Rational& x);

/// Level of the middle-thirds adjacent interval containing t in (0,1], or 0
/// if t is not in any within max_depth (Cantor points and 1 itself).
int cantor_level(double t, int max_depth = 40);
int cantor_level_exact(const Rational& t, int max_depth = 20);

/// The 1-D comb profile: zero off the adjacent intervals, and on a level-n
/// interval the amplitude N gated by the periodic indicator at scale 3^p
/// with duty cycle 3^{-alpha n}. Defined for x in (0,1].
double comb_profile(double amplitude, int p, double alpha, double x);

/// Amplitude rule N(l) >= 1 on the unit-cube lattice.
struct AmplitudeRule {
    std::string name;
    std::function<double(const std::vector<std::int64_t>&)> fn;

    double operator()(const std::vector<std::int64_t>& l) const;

    static AmplitudeRule sup_norm();           // max(1, |l|_inf)
    static AmplitudeRule one_plus_sup_norm();  // 1 + |l|_inf
    static AmplitudeRule log_rule();           // 1 + log(1 + |l|_inf)
    static AmplitudeRule sqrt_rule();          // 1 + sqrt(|l|_inf)
    static AmplitudeRule table(std::map<std::vector<std::int64_t>, double> values,
                               double fallback = 1.0);
    static AmplitudeRule by_name(const std::string& name);
};

/// The oscillating two-valued potential: on each unit cube l + [0,1]^d it is
/// the comb profile of the first coordinate with amplitude N(l) and scale
/// exponent p = |l|_inf + 1. Takes exactly the values {0, N(l)} on the cube.
class ValphaPotential {
public:
    ValphaPotential(int dim, double alpha, AmplitudeRule rule);

    int dim() const { return dim_; }
    double alpha() const { return alpha_; }
    const AmplitudeRule& rule() const { return rule_; }

    struct CellInfo {
        std::vector<std::int64_t> l;
        std::int64_t sup_norm = 0;
        double amplitude = 1.0;
        int p = 1;
    };
    /// The cube owning x: lexicographically smallest admissible lattice
    /// point (boundary points belong to the smaller cube).
    CellInfo locate(const std::vector<double>& x) const;

    double operator()(const std::vector<double>& x) const;

private:
    int dim_;
    double alpha_;
    AmplitudeRule rule_;
};

/// Exact measure of {x in [a,b] : the periodic indicator at scale S and duty
/// beta is positive}. Full periods contribute beta/S; partial end periods
/// are measured exactly.
Rational indicator_measure(const Rational& S, const Rational& beta, const Rational& a,
                           const Rational& b);
double indicator_measure(double S, double beta, double a, double b);

struct CellFraction {
    double analytic = 0.0;        // 3^{-alpha j}
    double measured = 0.0;        // period-counting route
    bool exact_path = false;      // true when alpha*j is an integer
    Rational analytic_exact{0};   // valid on the exact path
    Rational measured_exact{0};   // valid on the exact path
};

/// Positive-measure fraction of the potential on the canonical level-n cell
/// inside the level-j adjacent band of cube l. Requires 1 <= j <= n and
/// |l|_inf > n (period alignment); returns the closed-form fraction and the
/// independently measured one.
CellFraction cell_positive_fraction(const ValphaPotential& pot,
                                    const std::vector<std::int64_t>& l, int j, int n);

}  // namespace specdisc
