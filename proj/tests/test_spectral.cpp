#include <doctest.h>

#include <cmath>

#include "specdisc/spectral.hpp"

using namespace specdisc;

namespace {

const FieldFn zero_potential = [](const std::vector<double>&) { return 0.0; };

}  // namespace

TEST_CASE("1-d free operator converges to the first Dirichlet mode") {
    // On [0, pi] the lowest eigenvalue tends to 1; the finite-difference
    // value is (2/h^2)(1 - cos h).
    double previous_error = 1.0;
    for (std::int64_t n : {16, 32, 64}) {
        const double h = M_PI / static_cast<double>(n);
        DiscreteHamiltonian op(zero_potential, Box{{0.0}, {M_PI}}, h);
        const auto eig = lowest_eigenvalues(op, 1);
        const double expected = 2.0 / (h * h) * (1.0 - std::cos(h));
        CHECK(eig.values[0] == doctest::Approx(expected).epsilon(1e-9));
        const double error = std::abs(eig.values[0] - 1.0);
        CHECK(error < previous_error);
        previous_error = error;
    }
    CHECK(previous_error < 2e-3);
}

TEST_CASE("constant potential shifts the spectrum") {
    const double h = M_PI / 24.0;
    DiscreteHamiltonian free_op(zero_potential, Box{{0.0}, {M_PI}}, h);
    DiscreteHamiltonian shifted([](const std::vector<double>&) { return 2.5; },
                                Box{{0.0}, {M_PI}}, h);
    const auto a = lowest_eigenvalues(free_op, 3);
    const auto b = lowest_eigenvalues(shifted, 3);
    for (int i = 0; i < 3; ++i) CHECK(b.values[i] == doctest::Approx(a.values[i] + 2.5).epsilon(1e-10));
    // Values come out ascending.
    CHECK(a.values[0] < a.values[1]);
    CHECK(a.values[1] < a.values[2]);
}

TEST_CASE("assembly guards") {
    CHECK_THROWS_AS(DiscreteHamiltonian(zero_potential, Box{{0.0}, {1.0}}, 0.3),
                    std::invalid_argument);
    CHECK_THROWS_AS(DiscreteHamiltonian(zero_potential, Box{{0.0}, {1.0}}, -0.1),
                    std::invalid_argument);
    // Size guard: 101^3 > 10^6.
    CHECK_THROWS_AS(
        DiscreteHamiltonian(zero_potential, Box{{0, 0, 0}, {1, 1, 1}}, 1.0 / 102.0),
        std::invalid_argument);
}

TEST_CASE("operator symmetry via dot products") {
    const double h = 0.25;
    DiscreteHamiltonian op([](const std::vector<double>& x) { return x[0] + x[1]; },
                           Box{{0.0, 0.0}, {2.0, 2.0}}, h);
    std::vector<double> u(op.size()), v(op.size());
    for (std::size_t i = 0; i < op.size(); ++i) {
        u[i] = std::sin(0.3 * static_cast<double>(i) + 0.2);
        v[i] = std::cos(0.7 * static_cast<double>(i));
    }
    std::vector<double> hu, hv;
    op.apply(u, hu);
    op.apply(v, hv);
    double uhv = 0.0, vhu = 0.0;
    for (std::size_t i = 0; i < op.size(); ++i) {
        uhv += u[i] * hv[i];
        vhu += v[i] * hu[i];
    }
    CHECK(uhv == doctest::Approx(vhu).epsilon(1e-12));
}

TEST_CASE("rayleigh quotient consistency and residuals") {
    const double h = 0.125;
    DiscreteHamiltonian op([](const std::vector<double>& x) { return x[0] * x[0]; },
                           Box{{0.0, 0.0}, {1.0, 1.0}}, h);
    const auto eig = lowest_eigenvalues(op, 2);
    for (std::size_t i = 0; i < eig.values.size(); ++i) {
        CHECK(eig.residuals[i] <= 1e-8 * std::max(1.0, std::abs(eig.values[i])));
        CHECK(op.rayleigh_quotient(eig.vectors[i]) ==
              doctest::Approx(eig.values[i]).epsilon(1e-10));
    }
}

TEST_CASE("dirichlet domain monotonicity") {
    // Enlarging the window never increases the ground energy.
    const FieldFn hump = [](const std::vector<double>& x) {
        return 1.0 / (1.0 + x[0] * x[0] + x[1] * x[1]);
    };
    double previous = 1e300;
    for (double half : {0.5, 1.0, 1.5, 2.0}) {
        Cube window{{0.0, 0.0}, half};
        const auto trace = bottom_trace(hump, {window}, 16);
        CHECK(trace[0].energy <= previous + 1e-12);
        previous = trace[0].energy;
    }
}

TEST_CASE("bottom trace: flat for the free operator") {
    std::vector<Cube> windows;
    for (int k = 2; k <= 5; ++k) windows.push_back(Cube{{static_cast<double>(k), 0.0}, 1.0});
    const auto trace = bottom_trace(zero_potential, windows, 12);
    for (std::size_t i = 1; i < trace.size(); ++i)
        CHECK(trace[i].energy == doctest::Approx(trace[0].energy).epsilon(1e-9));
}
