#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace specdisc {

/// Compensated (Kahan) accumulator. Mass bookkeeping throughout the library
/// goes through this so that partition/additivity checks hold at 1e-12
/// relative tolerance.
class KahanSum {
public:
    void add(double x) {
        const double y = x - c_;
        const double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

private:
    double s_ = 0.0;
    double c_ = 0.0;
};

inline double kahan_total(const std::vector<double>& xs) {
    KahanSum k;
    for (double x : xs) k.add(x);
    return k.value();
}

/// |a - b| <= atol + rtol*|b|, the tolerance rule used by golden comparisons.
inline bool approx_eq(double a, double b, double atol = 1e-12, double rtol = 1e-12) {
    return std::abs(a - b) <= atol + rtol * std::abs(b);
}

inline std::int64_t ipow(std::int64_t base, int exp) {
    if (exp < 0) throw std::invalid_argument("ipow: negative exponent");
    std::int64_t r = 1;
    while (exp-- > 0) {
        if (r > INT64_MAX / base) throw std::overflow_error("ipow: overflow");
        r *= base;
    }
    return r;
}

/// Global worker-thread setting shared by the few internally parallel paths
/// (spectral matvec). 1 = serial. Results are identical for any value.
void set_worker_threads(int n);
int worker_threads();

}  // namespace specdisc
