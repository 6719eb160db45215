#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "lfmom/rational.hpp"
#include "lfmom/summation.hpp"

namespace lfmom {

namespace detail {

inline std::size_t checked_table_size(std::uint64_t limit, std::uint64_t cap) {
    if (limit < 1) throw std::invalid_argument("table limit must be >= 1");
    if (limit > cap) throw std::length_error("divisor table exceeds the memory budget");
    return static_cast<std::size_t>(limit);
}

inline constexpr std::uint64_t kTableCap = 100'000'000;

// floor-safe integer power with overflow guard; returns cap+1 on overflow.
inline std::uint64_t pow_clamped(std::uint64_t b, std::uint32_t e, std::uint64_t cap) {
    std::uint64_t r = 1;
    for (std::uint32_t i = 0; i < e; ++i) {
        if (b != 0 && r > cap / b) return cap + 1;
        r *= b;
    }
    return r;
}

} // namespace detail

/// A finitely supported real arithmetic weight n -> f(n) on [1, limit];
/// the unit shared by resonator coefficients and truncated L-series.
class CoefficientVector {
public:
    CoefficientVector() = default;
    explicit CoefficientVector(std::uint64_t limit)
        : coef_(detail::checked_table_size(limit, detail::kTableCap) + 1, 0.0) {}

    std::uint64_t limit() const { return coef_.size() - 1; }
    double& at(std::uint64_t n) { return coef_.at(n); }
    double at(std::uint64_t n) const { return n < coef_.size() ? coef_[n] : 0.0; }
    const std::vector<double>& raw() const { return coef_; }

    static CoefficientVector delta_one() {
        CoefficientVector f(1);
        f.at(1) = 1.0;
        return f;
    }
    static CoefficientVector indicator(std::uint64_t x) {
        CoefficientVector f(x);
        for (std::uint64_t n = 1; n <= x; ++n) f.at(n) = 1.0;
        return f;
    }

private:
    std::vector<double> coef_{0.0, 0.0}; // index 0 unused
};

/// d_l(n) for n <= limit, by l-1 Dirichlet convolutions with the constant 1.
class DivisorTable {
public:
    DivisorTable(std::uint32_t order, std::uint64_t limit) : order_(order) {
        if (order < 1) throw std::invalid_argument("divisor order must be >= 1");
        const std::size_t n = detail::checked_table_size(limit, detail::kTableCap);
        values_.assign(n + 1, 1);
        values_[0] = 0;
        std::vector<std::uint64_t> next(n + 1);
        for (std::uint32_t step = 1; step < order; ++step) {
            std::fill(next.begin(), next.end(), 0);
            for (std::size_t d = 1; d <= n; ++d)
                for (std::size_t m = d; m <= n; m += d)
                    next[m] += values_[d];
            values_.swap(next);
        }
    }

    std::uint32_t order() const { return order_; }
    std::uint64_t limit() const { return values_.size() - 1; }
    std::uint64_t at(std::uint64_t n) const { return values_.at(n); }

private:
    std::uint32_t order_;
    std::vector<std::uint64_t> values_;
};

inline DivisorTable sieve_dk(std::uint32_t order, std::uint64_t limit) {
    return DivisorTable(order, limit);
}

/// d_l(n;x): ordered factorizations n = a_1...a_l with every a_j <= x,
/// by l-1 truncated convolutions with the indicator of [1,x].
class RestrictedDivisorTable {
public:
    RestrictedDivisorTable(std::uint32_t order, std::uint64_t cap, std::uint64_t limit)
        : order_(order), cap_(cap) {
        if (order < 1) throw std::invalid_argument("divisor order must be >= 1");
        const std::size_t n = detail::checked_table_size(limit, detail::kTableCap);
        values_.assign(n + 1, 0);
        for (std::size_t m = 1; m <= n && m <= cap; ++m) values_[m] = 1;
        std::vector<std::uint64_t> next(n + 1);
        for (std::uint32_t step = 1; step < order; ++step) {
            std::fill(next.begin(), next.end(), 0);
            for (std::size_t d = 1; d <= n && d <= cap; ++d)
                for (std::size_t m = d; m <= n; m += d)
                    next[m] += values_[m / d];
            values_.swap(next);
        }
    }

    std::uint32_t order() const { return order_; }
    std::uint64_t cap() const { return cap_; }
    std::uint64_t limit() const { return values_.size() - 1; }
    std::uint64_t at(std::uint64_t n) const { return values_.at(n); }

private:
    std::uint32_t order_;
    std::uint64_t cap_;
    std::vector<std::uint64_t> values_;
};

inline RestrictedDivisorTable restricted_dk(std::uint32_t order, std::uint64_t cap,
                                            std::uint64_t limit) {
    return RestrictedDivisorTable(order, cap, limit);
}

/// Generalized divisor function d_z for rational z: the multiplicative
/// function with d_z(p^m) = z(z+1)...(z+m-1)/m!. Sieved over smallest prime
/// factors in exact rational arithmetic.
class DzTable {
public:
    DzTable(Rational z, std::uint64_t limit) : z_(z) {
        const std::size_t n = detail::checked_table_size(limit, 4'000'000);
        values_.assign(n + 1, Rational(0));
        values_[1] = Rational(1);

        // d_z(p^m) depends on m only
        std::vector<Rational> pp(1, Rational(1));
        for (std::uint64_t m = 1; (1ull << m) <= n; ++m)
            pp.push_back(pp.back() * (z + Rational(static_cast<std::int64_t>(m) - 1)) /
                         Rational(static_cast<std::int64_t>(m)));

        std::vector<std::uint32_t> spf(n + 1, 0);
        for (std::size_t i = 2; i <= n; ++i) {
            if (spf[i] == 0)
                for (std::size_t j = i; j <= n; j += i)
                    if (spf[j] == 0) spf[j] = static_cast<std::uint32_t>(i);
        }
        for (std::size_t i = 2; i <= n; ++i) {
            const std::uint64_t p = spf[i];
            std::uint64_t rest = i, e = 0;
            while (rest % p == 0) { rest /= p; ++e; }
            values_[i] = values_[rest] * pp[e];
        }
    }

    Rational z() const { return z_; }
    std::uint64_t limit() const { return values_.size() - 1; }
    const Rational& at(std::uint64_t n) const { return values_.at(n); }
    double at_double(std::uint64_t n) const { return values_.at(n).as_double(); }

private:
    Rational z_;
    std::vector<Rational> values_;
};

inline DzTable dz_table(Rational z, std::uint64_t limit) { return DzTable(z, limit); }

/// Truncated Dirichlet convolution: (f*g)(m) = sum_{ab=m} f(a)g(b) for
/// m <= limit, honouring both support bounds.
inline CoefficientVector convolve_truncated(const CoefficientVector& f,
                                            const CoefficientVector& g,
                                            std::uint64_t limit) {
    CoefficientVector out(limit);
    for (std::uint64_t a = 1; a <= f.limit() && a <= limit; ++a) {
        const double fa = f.at(a);
        if (fa == 0.0) continue;
        const std::uint64_t bmax = std::min(g.limit(), limit / a);
        for (std::uint64_t b = 1; b <= bmax; ++b)
            out.at(a * b) += fa * g.at(b);
    }
    return out;
}

/// sum_{n <= x^k} d_k(n;x)^2 / n
inline double diagonal_sum(std::uint32_t k, std::uint64_t x) {
    if (k < 1 || x < 1) throw std::invalid_argument("diagonal_sum: k, x must be >= 1");
    const std::uint64_t limit = detail::pow_clamped(x, k, detail::kTableCap);
    const RestrictedDivisorTable t = restricted_dk(k, x, limit);
    Kahan acc;
    for (std::uint64_t n = 1; n <= limit; ++n) {
        const double d = static_cast<double>(t.at(n));
        if (d != 0.0) acc.add(d * d / static_cast<double>(n));
    }
    return acc.value();
}

/// sum_{n <= y} d_k(n)^2 / n
inline double dk_squared_partial(std::uint32_t k, std::uint64_t y) {
    if (k < 1 || y < 1) throw std::invalid_argument("dk_squared_partial: k, y must be >= 1");
    const DivisorTable t = sieve_dk(k, y);
    Kahan acc;
    for (std::uint64_t n = 1; n <= y; ++n) {
        const double d = static_cast<double>(t.at(n));
        acc.add(d * d / static_cast<double>(n));
    }
    return acc.value();
}

} // namespace lfmom
