#pragma once

#include <cstdint>
#include <vector>

#include "specdisc/conditions.hpp"
#include "specdisc/geometry.hpp"
#include "specdisc/measure.hpp"

namespace specdisc {

/// Dirichlet finite-difference Schrödinger operator on a box: the standard
/// 2d+1-point stencil for -laplacian plus the potential sampled at interior
/// nodes. Matrix-free, symmetric; diagonal entries are 2d/h^2 + V >= 2d/h^2.
class DiscreteHamiltonian {
public:
    DiscreteHamiltonian(const FieldFn& V, const Box& box, double h);

    std::size_t size() const { return diag_.size(); }
    double spacing() const { return h_; }
    const std::vector<std::int64_t>& interior_points() const { return dims_; }
    const std::vector<double>& diagonal() const { return diag_; }

    /// y = H x. Row-parallel when worker_threads() > 1; bitwise identical
    /// for any thread count.
    void apply(const std::vector<double>& x, std::vector<double>& y) const;

    double rayleigh_quotient(const std::vector<double>& x) const;

private:
    Box box_;
    double h_;
    std::vector<std::int64_t> dims_;
    std::vector<double> diag_;
};

struct EigenResult {
    std::vector<double> values;                 // ascending
    std::vector<std::vector<double>> vectors;   // unit vectors, aligned
    std::vector<double> residuals;              // ||H x - lambda x||
};

/// Lowest k eigenvalues via restarted Lanczos with full reorthogonalization.
/// Residuals are verified against the operator directly; the iteration
/// deepens until they fall under tol.
EigenResult lowest_eigenvalues(const DiscreteHamiltonian& op, int k, double tol = 1e-8,
                               std::uint64_t seed = 42);

struct WindowEnergy {
    double window_index = 0.0;  // sup-norm of the window center
    double energy = 0.0;        // Dirichlet ground energy of the window
};

/// Ground-energy trace over a family of window cubes. An empirical proxy:
/// potentials passing the discreteness conditions should show growing local
/// ground energies along the sweep.
std::vector<WindowEnergy> bottom_trace(const FieldFn& V, const std::vector<Cube>& windows,
                                       std::int64_t res_per_axis);

}  // namespace specdisc
