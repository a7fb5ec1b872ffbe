#include "specdisc/optcover.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "specdisc/util.hpp"

namespace specdisc {

namespace {

void check_open_range(double t, const WeightedSpace& space, const char* who) {
    if (!(t > 0.0) || !(t < space.total_mass()))
        throw std::invalid_argument(std::string(who) + ": t must lie in (0, total_mass)");
}

}  // namespace

CoverSolution optimal_cover(const ScalarField& field, const WeightedSpace& space, double t) {
    check_open_range(t, space, "optimal_cover");

    const StrictSublevel strict = strict_sublevel(field, space, t);

    CoverSolution sol;
    sol.level = strict.level;
    sol.strict_mass = strict.mass;

    KahanSum integral;
    KahanSum mass;
    for (std::size_t i : strict.atom_indices) {
        const Atom& a = space.atoms()[i];
        integral.add(field[i] * a.mass);
        mass.add(a.mass);
        sol.full_atoms.push_back(a.id);
    }

    // Fill the remaining t - kappa^- inside the tie layer {W == level},
    // lowest atom id first; the last grabbed atom may be fractional. The
    // split is not observable in `value`.
    double need = t - strict.mass;
    std::vector<std::size_t> tie;
    for (std::size_t i = 0; i < space.size(); ++i)
        if (field[i] == strict.level) tie.push_back(i);
    std::sort(tie.begin(), tie.end(), [&space](std::size_t a, std::size_t b) {
        return space.atoms()[a].id < space.atoms()[b].id;
    });
    for (std::size_t i : tie) {
        if (need <= 0.0) break;
        const Atom& a = space.atoms()[i];
        if (a.mass <= need) {
            sol.full_atoms.push_back(a.id);
            mass.add(a.mass);
            need -= a.mass;
        } else {
            sol.fractional = {a.id, need / a.mass};
            mass.add(need);
            need = 0.0;
        }
    }

    sol.value = integral.value() + (t - strict.mass) * strict.level;
    sol.achieved_mass = mass.value();
    return sol;
}

double brute_force_cover_value(const ScalarField& field, const WeightedSpace& space, double t) {
    check_open_range(t, space, "brute_force_cover_value");
    const std::size_t n = space.size();
    if (n > 20) throw std::invalid_argument("brute_force_cover_value: more than 20 atoms");

    double best = std::numeric_limits<double>::infinity();
    const std::uint32_t limit = 1u << n;
    for (std::uint32_t mask = 1; mask < limit; ++mask) {
        KahanSum m, integral;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (1u << i)) {
                m.add(space.atoms()[i].mass);
                integral.add(field[i] * space.atoms()[i].mass);
            }
        }
        if (m.value() >= t) best = std::min(best, integral.value());
    }
    return best;
}

double greedy_cover_value(const ScalarField& field, const WeightedSpace& space, double t) {
    check_open_range(t, space, "greedy_cover_value");
    std::vector<std::size_t> order(space.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&field](std::size_t a, std::size_t b) { return field[a] < field[b]; });

    KahanSum m, integral;
    for (std::size_t i : order) {
        integral.add(field[i] * space.atoms()[i].mass);
        m.add(space.atoms()[i].mass);
        if (m.value() >= t) break;
    }
    return integral.value();
}

SandwichCheck cover_sandwich_check(const ScalarField& field, const WeightedSpace& space, double t,
                                   double theta, double slack) {
    check_open_range(t, space, "cover_sandwich_check");
    if (!(theta > 1.0)) throw std::invalid_argument("cover_sandwich_check: theta must be > 1");

    const double total = space.total_mass();
    DistributionProfile profile(field, space);
    const double upper = profile.nonincreasing_value(t);

    SandwichCheck out;
    out.lower_bound = (theta - 1.0) * t / theta * upper;
    out.j_left = optimal_cover(field, space, total - t / theta).value;
    out.j_right = optimal_cover(field, space, total - t).value;
    out.upper_bound = (total - t) * upper;
    const double tol_l = slack * std::max(1.0, std::abs(out.lower_bound));
    const double tol_r = slack * std::max(1.0, std::abs(out.upper_bound));
    out.ok = (out.j_left >= out.lower_bound - tol_l) && (out.j_right <= out.upper_bound + tol_r);
    return out;
}

}  // namespace specdisc
