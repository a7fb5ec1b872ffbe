#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace specdisc {

/// Exact rational arithmetic on int64 numerator/denominator with 128-bit
/// intermediates. Covers the triadic lattice work in this library (anchors
/// with denominators up to 3^20, period counts up to 3^12); anything larger
/// throws instead of silently wrapping.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(std::int64_t n) : num_(n), den_(1) {}
    Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) { normalize(); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    Rational operator-() const { return Rational(-num_, den_, tag{}); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        const std::int64_t g = std::gcd(a.den_, b.den_);
        const i128 lhs = i128(a.num_) * (b.den_ / g);
        const i128 rhs = i128(b.num_) * (a.den_ / g);
        const i128 den = i128(a.den_) * (b.den_ / g);
        return make(lhs + rhs, den);
    }
    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
    friend Rational operator*(const Rational& a, const Rational& b) {
        const std::int64_t g1 = std::gcd(std::abs(a.num_), b.den_);
        const std::int64_t g2 = std::gcd(std::abs(b.num_), a.den_);
        return make(i128(a.num_ / g1) * (b.num_ / g2), i128(a.den_ / g2) * (b.den_ / g1));
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
        return a * Rational(b.den_, b.num_);
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    /// Largest integer <= value.
    std::int64_t floor() const {
        std::int64_t q = num_ / den_;
        if (num_ % den_ != 0 && num_ < 0) --q;
        return q;
    }

    bool is_integer() const { return den_ == 1; }

    std::string str() const {
        return den_ == 1 ? std::to_string(num_)
                         : std::to_string(num_) + "/" + std::to_string(den_);
    }

    static Rational pow(const Rational& base, int e) {
        Rational r(1);
        Rational b = base;
        int n = e;
        if (n < 0) { b = Rational(1) / b; n = -n; }
        for (; n > 0; n >>= 1) {
            if (n & 1) r *= b;
            b *= b;
        }
        return r;
    }

private:
    using i128 = __int128;
    struct tag {};
    Rational(std::int64_t n, std::int64_t d, tag) : num_(n), den_(d) {}

    static Rational make(i128 n, i128 d) {
        if (d == 0) throw std::domain_error("Rational: zero denominator");
        if (d < 0) { n = -n; d = -d; }
        const i128 g = gcd128(n < 0 ? -n : n, d);
        n /= g;
        d /= g;
        if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
            throw std::overflow_error("Rational: 64-bit overflow");
        return Rational(static_cast<std::int64_t>(n), static_cast<std::int64_t>(d), tag{});
    }

    static i128 gcd128(i128 a, i128 b) {
        while (b != 0) {
            const i128 t = a % b;
            a = b;
            b = t;
        }
        return a == 0 ? 1 : a;
    }

    void normalize() { *this = make(num_, den_); }

    std::int64_t num_;
    std::int64_t den_;
};

/// Axis-aligned box with exact rational endpoints; the geometry carrier for
/// dense systems, m-adic cells and triadic potential supports.
struct RatBox {
    std::vector<Rational> lo;
    std::vector<Rational> hi;

    std::size_t dim() const { return lo.size(); }

    bool contains(const RatBox& inner) const {
        for (std::size_t k = 0; k < lo.size(); ++k)
            if (inner.lo[k] < lo[k] || hi[k] < inner.hi[k]) return false;
        return true;
    }

    bool intersects(const RatBox& other) const {
        for (std::size_t k = 0; k < lo.size(); ++k)
            if (other.hi[k] <= lo[k] || hi[k] <= other.lo[k]) return false;
        return true;
    }

    Rational volume() const {
        Rational v(1);
        for (std::size_t k = 0; k < lo.size(); ++k) v *= (hi[k] - lo[k]);
        return v;
    }
};

/// True iff `cell` is covered by the union of `boxes`. Boxes may overlap;
/// the test clips `cell` against each box in turn and recurses on the
/// uncovered fragments.
bool box_covered_by_union(const RatBox& cell, const std::vector<RatBox>& boxes);

}  // namespace specdisc
