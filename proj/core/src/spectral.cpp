#include "specdisc/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>

#include <Eigen/Dense>

#include "specdisc/util.hpp"

namespace specdisc {

DiscreteHamiltonian::DiscreteHamiltonian(const FieldFn& V, const Box& box, double h)
    : box_(box), h_(h) {
    if (!(h > 0.0)) throw std::invalid_argument("DiscreteHamiltonian: h must be > 0");
    const std::size_t d = box.dim();
    dims_.resize(d);
    std::int64_t total = 1;
    for (std::size_t k = 0; k < d; ++k) {
        const double edge = box.hi[k] - box.lo[k];
        const double cells = edge / h;
        if (std::abs(cells - std::round(cells)) > 1e-9 * cells)
            throw std::invalid_argument("DiscreteHamiltonian: h must divide the box edges");
        dims_[k] = static_cast<std::int64_t>(std::round(cells)) - 1;  // interior nodes
        if (dims_[k] < 1)
            throw std::invalid_argument("DiscreteHamiltonian: box too small for spacing");
        total *= dims_[k];
    }
    if (total > 1'000'000) throw std::invalid_argument("DiscreteHamiltonian: grid exceeds 10^6 points");

    diag_.resize(static_cast<std::size_t>(total));
    const double base = 2.0 * static_cast<double>(d) / (h * h);
    std::vector<double> x(d);
    for (std::int64_t flat = 0; flat < total; ++flat) {
        std::int64_t rest = flat;
        for (std::size_t k = d; k-- > 0;) {
            const std::int64_t ik = rest % dims_[k];
            rest /= dims_[k];
            x[k] = box.lo[k] + static_cast<double>(ik + 1) * h;
        }
        const double v = V(x);
        if (v < 0.0 || !std::isfinite(v))
            throw std::invalid_argument("DiscreteHamiltonian: potential must be nonnegative");
        diag_[static_cast<std::size_t>(flat)] = base + v;
    }
}

void DiscreteHamiltonian::apply(const std::vector<double>& x, std::vector<double>& y) const {
    const std::size_t n = diag_.size();
    if (x.size() != n) throw std::invalid_argument("apply: size mismatch");
    y.resize(n);
    const double inv_h2 = 1.0 / (h_ * h_);
    const std::size_t d = dims_.size();

    // Strides of each axis in the flattened ordering.
    std::vector<std::int64_t> stride(d, 1);
    for (std::size_t k = d - 1; k-- > 0;) stride[k] = stride[k + 1] * dims_[k + 1];

    const auto row_range = [&](std::size_t begin, std::size_t end) {
        std::vector<std::int64_t> idx(d);
        for (std::size_t i = begin; i < end; ++i) {
            std::int64_t rest = static_cast<std::int64_t>(i);
            for (std::size_t k = d; k-- > 0;) {
                idx[k] = rest % dims_[k];
                rest /= dims_[k];
            }
            double acc = diag_[i] * x[i];
            for (std::size_t k = 0; k < d; ++k) {
                if (idx[k] > 0) acc -= inv_h2 * x[i - static_cast<std::size_t>(stride[k])];
                if (idx[k] + 1 < dims_[k]) acc -= inv_h2 * x[i + static_cast<std::size_t>(stride[k])];
            }
            y[i] = acc;
        }
    };

    const int threads = std::min<int>(worker_threads(), 8);
    if (threads <= 1 || n < 4096) {
        row_range(0, n);
        return;
    }
    std::vector<std::thread> pool;
    const std::size_t chunk = (n + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        const std::size_t begin = t * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back(row_range, begin, end);
    }
    for (auto& th : pool) th.join();
}

double DiscreteHamiltonian::rayleigh_quotient(const std::vector<double>& x) const {
    std::vector<double> y;
    apply(x, y);
    KahanSum num, den;
    for (std::size_t i = 0; i < x.size(); ++i) {
        num.add(x[i] * y[i]);
        den.add(x[i] * x[i]);
    }
    return num.value() / den.value();
}

namespace {

double norm(const std::vector<double>& x) {
    KahanSum s;
    for (double v : x) s.add(v * v);
    return std::sqrt(s.value());
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    KahanSum s;
    for (std::size_t i = 0; i < a.size(); ++i) s.add(a[i] * b[i]);
    return s.value();
}

}  // namespace

EigenResult lowest_eigenvalues(const DiscreteHamiltonian& op, int k, double tol,
                               std::uint64_t seed) {
    if (k < 1) throw std::invalid_argument("lowest_eigenvalues: k must be >= 1");
    const std::size_t n = op.size();
    if (static_cast<std::size_t>(k) > n)
        throw std::invalid_argument("lowest_eigenvalues: k exceeds operator size");

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> start(n);
    for (double& v : start) v = gauss(rng);

    int m = std::min<std::size_t>(n, std::max<std::size_t>(static_cast<std::size_t>(6 * k + 40),
                                                           60));
    for (int attempt = 0; attempt < 8; ++attempt) {
        // Lanczos with full reorthogonalization.
        std::vector<std::vector<double>> basis;
        std::vector<double> alpha, beta;
        std::vector<double> v = start;
        const double nv = norm(v);
        for (double& c : v) c /= nv;
        basis.push_back(v);

        std::vector<double> w;
        for (int j = 0; j < m; ++j) {
            op.apply(basis.back(), w);
            const double a = dot(w, basis.back());
            alpha.push_back(a);
            for (std::size_t i = 0; i < n; ++i)
                w[i] -= a * basis.back()[i] + (j > 0 ? beta.back() * basis[basis.size() - 2][i] : 0.0);
            // Reorthogonalize twice against the whole basis.
            for (int pass = 0; pass < 2; ++pass)
                for (const auto& q : basis) {
                    const double c = dot(w, q);
                    for (std::size_t i = 0; i < n; ++i) w[i] -= c * q[i];
                }
            const double b = norm(w);
            if (b < 1e-13) break;  // invariant subspace found
            beta.push_back(b);
            for (double& c : w) c /= b;
            if (static_cast<int>(basis.size()) < m) basis.push_back(w);
        }

        const int steps = static_cast<int>(alpha.size());
        Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(steps, steps);
        for (int i = 0; i < steps; ++i) {
            tri(i, i) = alpha[static_cast<std::size_t>(i)];
            if (i + 1 < steps) {
                tri(i, i + 1) = beta[static_cast<std::size_t>(i)];
                tri(i + 1, i) = beta[static_cast<std::size_t>(i)];
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(tri);

        EigenResult result;
        bool converged = true;
        for (int e = 0; e < k && e < steps; ++e) {
            const double lambda = solver.eigenvalues()(e);
            std::vector<double> x(n, 0.0);
            for (int j = 0; j < steps && j < static_cast<int>(basis.size()); ++j) {
                const double c = solver.eigenvectors()(j, e);
                for (std::size_t i = 0; i < n; ++i) x[i] += c * basis[static_cast<std::size_t>(j)][i];
            }
            const double nx = norm(x);
            for (double& c : x) c /= nx;
            std::vector<double> hx;
            op.apply(x, hx);
            KahanSum r2;
            for (std::size_t i = 0; i < n; ++i) {
                const double ri = hx[i] - lambda * x[i];
                r2.add(ri * ri);
            }
            const double residual = std::sqrt(r2.value());
            if (residual > tol * std::max(1.0, std::abs(lambda))) converged = false;
            result.values.push_back(lambda);
            result.vectors.push_back(std::move(x));
            result.residuals.push_back(residual);
        }
        if (static_cast<int>(result.values.size()) < k) converged = false;

        if (converged) return result;
        if (static_cast<std::size_t>(m) >= n) return result;  // exact subspace reached
        m = static_cast<int>(std::min<std::size_t>(n, static_cast<std::size_t>(m) * 2));
        if (!result.vectors.empty()) start = result.vectors.front();
    }
    throw std::runtime_error("lowest_eigenvalues: Lanczos failed to converge");
}

std::vector<WindowEnergy> bottom_trace(const FieldFn& V, const std::vector<Cube>& windows,
                                       std::int64_t res_per_axis) {
    if (windows.empty()) throw std::invalid_argument("bottom_trace: no windows");
    std::vector<WindowEnergy> out;
    for (const Cube& window : windows) {
        const Box box = window.to_box();
        const double h = 2.0 * window.halfwidth / static_cast<double>(res_per_axis);
        DiscreteHamiltonian op(V, box, h);
        const auto eig = lowest_eigenvalues(op, 1);
        double idx = 0.0;
        for (double c : window.center) idx = std::max(idx, std::abs(c));
        out.push_back({idx, eig.values.front()});
    }
    return out;
}

}  // namespace specdisc
