#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "lfmom/characters.hpp"
#include "lfmom/divisor.hpp"
#include "lfmom/group_dft.hpp"

namespace lfmom {

/// Moment order k = r/s >= 1 in lowest terms.
class RationalOrder {
public:
    RationalOrder(std::int64_t r, std::int64_t s = 1) {
        if (s <= 0 || r <= 0)
            throw std::invalid_argument("moment order must be a positive rational");
        const std::int64_t g = std::gcd(r, s);
        r_ = r / g;
        s_ = s / g;
        if (r_ < s_)
            throw std::invalid_argument("moment order k must satisfy k >= 1");
    }

    std::int64_t r() const { return r_; }
    std::int64_t s() const { return s_; }
    bool is_integer() const { return s_ == 1; }
    double value() const { return static_cast<double>(r_) / static_cast<double>(s_); }
    double two_k() const { return 2.0 * value(); }
    double k_squared() const { return value() * value(); }
    std::string str() const {
        return s_ == 1 ? std::to_string(r_) : std::to_string(r_) + "/" + std::to_string(s_);
    }
    friend bool operator==(const RationalOrder& a, const RationalOrder& b) {
        return a.r_ == b.r_ && a.s_ == b.s_;
    }

private:
    std::int64_t r_;
    std::int64_t s_;
};

/// One complex value per character index a in {0,...,q-2}.
struct CharVector {
    std::uint64_t q = 0;
    std::vector<cplx> entries;
};

/// Resonator coefficients: base weights f(n) = d_{1/s}(n)/sqrt(n) supported
/// on [1, base_limit] with base_limit = floor(q^{1/(2r)}), so that
/// base_limit^r <= sqrt(q) and every diagonal identity downstream is exact.
/// A(chi) is the s-th power of the base polynomial B(chi); s = 1 gives the
/// plain weights 1/sqrt(n).
struct ResonatorSpec {
    RationalOrder order;
    std::uint64_t base_limit = 1;
    CoefficientVector base;
    std::uint32_t power = 1;
};

namespace detail {

// largest x with x^e <= q
inline std::uint64_t integer_root(std::uint64_t q, std::uint32_t e) {
    std::uint64_t x = static_cast<std::uint64_t>(std::pow(static_cast<double>(q), 1.0 / e));
    auto pw = [&](std::uint64_t b) {
        __uint128_t r = 1;
        for (std::uint32_t i = 0; i < e; ++i) {
            r *= b;
            if (r > q) return false;
        }
        return true;
    };
    while (x > 1 && !pw(x)) --x;
    while (pw(x + 1)) ++x;
    return x;
}

} // namespace detail

inline ResonatorSpec build_spec(const PrimeContext& ctx, RationalOrder k) {
    const std::uint64_t limit =
        detail::integer_root(ctx.q(), static_cast<std::uint32_t>(2 * k.r()));
    CoefficientVector base(limit);
    if (k.is_integer()) {
        for (std::uint64_t n = 1; n <= limit; ++n)
            base.at(n) = 1.0 / std::sqrt(static_cast<double>(n));
    } else {
        const DzTable dz = dz_table(Rational(1, k.s()), limit);
        for (std::uint64_t n = 1; n <= limit; ++n)
            base.at(n) = dz.at_double(n) / std::sqrt(static_cast<double>(n));
    }
    return ResonatorSpec{k, limit, std::move(base), static_cast<std::uint32_t>(k.s())};
}

namespace detail {

inline CharVector transform_buckets(const CharGroup& grp, std::vector<cplx> buckets) {
    auto entries = dft::group_transform(buckets, +1);
    return CharVector{grp.q(), std::move(entries)};
}

} // namespace detail

/// Simultaneous evaluation of sum_n f(n) chi_a(n) for every a: bucket f by
/// discrete log, then one length-(q-1) transform. Multiples of q are skipped
/// (chi vanishes there).
inline CharVector eval_all_characters(const CharGroup& grp, const CoefficientVector& f) {
    const PrimeContext& ctx = grp.ctx();
    std::vector<cplx> buckets(ctx.phi(), 0.0);
    for (std::uint64_t n = 1; n <= f.limit(); ++n) {
        const double c = f.at(n);
        if (c == 0.0 || ctx.divides(n)) continue;
        buckets[ctx.ind(n)] += c;
    }
    return detail::transform_buckets(grp, std::move(buckets));
}

inline cplx pow_complex(cplx z, std::uint32_t e) {
    cplx r = 1.0;
    while (e) {
        if (e & 1) r *= z;
        z *= z;
        e >>= 1;
    }
    return r;
}

/// A(chi_a) = B(chi_a)^power over the whole family.
inline CharVector resonator_values(const CharGroup& grp, const ResonatorSpec& spec) {
    CharVector b = eval_all_characters(grp, spec.base);
    if (spec.power > 1)
        for (auto& z : b.entries) z = pow_complex(z, spec.power);
    return b;
}

} // namespace lfmom
