#pragma once

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include "lfmom/divisor.hpp"
#include "lfmom/lvalues.hpp"
#include "lfmom/resonator.hpp"

namespace lfmom {

/// One (q, k) result record.
struct MomentRow {
    std::uint64_t q = 0;
    RationalOrder k{1, 1};
    std::uint64_t x = 0;       // realized resonator truncation
    std::uint64_t X = 0;       // realized L-series truncation (0 for oracle)
    std::string method;        // L-value source tag
    double M2k = 0.0;
    cplx S1{0.0, 0.0};
    double S2 = 0.0;
    double S2_diag = 0.0;
    double S1_main = std::numeric_limits<double>::quiet_NaN();
    double S1_off = std::numeric_limits<double>::quiet_NaN();
    double S1_diag_lower = 0.0;
    double holder_bound = 0.0;
    double ratio_moment = 0.0; // M2k / (q (ln q)^{k^2})
    double ratio_bound = 0.0;  // holder_bound / (q (ln q)^{k^2})
    double resid_s2 = 0.0;     // relative residual of the exact S2 identity
    double resid_s1_imag = 0.0;
    double t_lvalues = 0.0; // seconds
    double t_resonator = 0.0;
    double t_row = 0.0;
};

/// sum over nonprincipal chi of |L(1/2,chi)|^{2k}.
inline double moment_2k(const LValueSet& lvals, RationalOrder k) {
    const double e = k.two_k();
    Kahan acc;
    for (std::size_t a = 1; a < lvals.vals.size(); ++a)
        acc.add(std::pow(std::abs(lvals.vals[a]), e));
    return acc.value();
}

/// S2 = sum over nonprincipal chi of |A(chi)|^{2k}.
inline double compute_S2(const CharVector& A, RationalOrder k) {
    const double e = k.two_k();
    Kahan acc;
    for (std::size_t a = 1; a < A.entries.size(); ++a)
        acc.add(std::pow(std::abs(A.entries[a]), e));
    return acc.value();
}

namespace detail {

// r-fold truncated self-convolution of the base weights; support stays within
// base_limit^r <= sqrt(q), which the caller must have checked.
inline CoefficientVector convolution_power(const CoefficientVector& base, std::uint32_t r) {
    CoefficientVector w = base;
    std::uint64_t limit = base.limit();
    for (std::uint32_t i = 1; i < r; ++i) {
        limit *= base.limit();
        w = convolve_truncated(w, base, limit);
    }
    return w;
}

inline void require_exact_support(const ResonatorSpec& spec, const PrimeContext& ctx) {
    __uint128_t p = 1;
    for (std::int64_t i = 0; i < 2 * spec.order.r(); ++i) {
        p *= spec.base_limit;
        if (p > ctx.q())
            throw std::invalid_argument(
                "diagonal identity requires base_limit^r <= sqrt(q); support too large");
    }
}

} // namespace detail

/// The exact all-character diagonal: phi(q) * sum_m w(m)^2 with w the r-fold
/// self-convolution of the base weights. Subtracting |A(chi_0)|^{2k} predicts
/// S2 exactly because the convolution support stays below q.
inline double compute_S2_diagonal(RationalOrder k, const ResonatorSpec& spec,
                                  const PrimeContext& ctx) {
    detail::require_exact_support(spec, ctx);
    const CoefficientVector w =
        detail::convolution_power(spec.base, static_cast<std::uint32_t>(k.r()));
    Kahan acc;
    for (std::uint64_t m = 1; m <= w.limit(); ++m) {
        const double v = w.at(m);
        if (v != 0.0) acc.add(v * v);
    }
    return static_cast<double>(ctx.phi()) * acc.value();
}

/// S1 = sum over nonprincipal chi of L(1/2,chi) B(chi)^{r-s} conj(B(chi))^r;
/// for integer k this is L * A^{k-1} * conj(A)^k. Returned as a complex so
/// the near-reality of S1 is itself a checked output.
inline cplx compute_S1(const LValueSet& lvals, const CharVector& A_base, RationalOrder k) {
    if (lvals.vals.size() != A_base.entries.size())
        throw std::invalid_argument("compute_S1: mismatched family sizes");
    const auto e1 = static_cast<std::uint32_t>(k.r() - k.s());
    const auto e2 = static_cast<std::uint32_t>(k.r());
    KahanComplex acc;
    for (std::size_t a = 1; a < A_base.entries.size(); ++a) {
        const cplx b = A_base.entries[a];
        acc.add(lvals.vals[a] * pow_complex(b, e1) * pow_complex(std::conj(b), e2));
    }
    return acc.value();
}

struct S1MainParts {
    double diagonal = 0.0;     // an = b terms
    double off_diagonal = 0.0; // an = b + q*l, l >= 1
    double total() const { return diagonal + off_diagonal; }
};

/// The congruence-sum route for integer k:
///   phi(q) sum_{a<=x^{k-1}} sum_{b<=x^k} sum_{n<=X, an=b (mod q)}
///          d_{k-1}(a;x) d_k(b;x) / sqrt(abn),
/// evaluated exactly and split at an = b. By orthogonality this equals the
/// all-character truncated twisted sum, principal character included.
inline S1MainParts compute_S1_main(const PrimeContext& ctx, RationalOrder k,
                                   const ResonatorSpec& spec, std::uint64_t X) {
    if (!k.is_integer())
        throw std::invalid_argument("compute_S1_main: integer k required");
    if (X < ctx.q())
        throw std::invalid_argument("compute_S1_main: X >= q required");
    const auto kk = static_cast<std::uint32_t>(k.r());
    const std::uint64_t x = spec.base_limit;
    const std::uint64_t q = ctx.q();
    const std::uint64_t bcap = detail::pow_clamped(x, kk, detail::kTableCap);
    const std::uint64_t acap = detail::pow_clamped(x, kk - 1, detail::kTableCap);
    const RestrictedDivisorTable dk = restricted_dk(kk, x, bcap);
    // d_0 is the unit at 1
    const RestrictedDivisorTable dk1 =
        kk >= 2 ? restricted_dk(kk - 1, x, acap) : restricted_dk(1, 1, 1);

    Kahan diag, off;
    for (std::uint64_t a = 1; a <= acap; ++a) {
        const double da = static_cast<double>(dk1.at(a));
        if (da == 0.0) continue;
        for (std::uint64_t n = 1; n <= X; ++n) {
            if (n % q == 0) continue;
            const std::uint64_t b = (a * n) % q;
            if (b == 0 || b > bcap) continue;
            const double db = static_cast<double>(dk.at(b));
            if (db == 0.0) continue;
            const double t =
                da * db / std::sqrt(static_cast<double>(a) * static_cast<double>(b) *
                                    static_cast<double>(n));
            if (a * n == b)
                diag.add(t);
            else
                off.add(t);
        }
    }
    const double phi = static_cast<double>(ctx.phi());
    return S1MainParts{phi * diag.value(), phi * off.value()};
}

/// The proof's lower-bound main term phi(q) * sum_b d_k(b;x)^2 / b. For
/// integer k this runs through the restricted-divisor sieve, independently of
/// the convolution-power route used by compute_S2_diagonal.
inline double s1_diag_lower(RationalOrder k, const ResonatorSpec& spec, const PrimeContext& ctx) {
    detail::require_exact_support(spec, ctx);
    if (k.is_integer()) {
        const double s = diagonal_sum(static_cast<std::uint32_t>(k.r()), spec.base_limit);
        return static_cast<double>(ctx.phi()) * s;
    }
    return compute_S2_diagonal(k, spec, ctx);
}

/// Holder's inequality turns the pair (S1, S2) into the moment lower bound
/// |S1|^{2k} / S2^{2k-1}.
inline double holder_lower_bound(double S1, double S2, RationalOrder k) {
    if (!(S2 > 0.0)) throw std::domain_error("holder_lower_bound: S2 must be positive");
    const double e = k.two_k();
    return std::pow(std::abs(S1), e) / std::pow(S2, e - 1.0);
}

/// Fills a complete MomentRow from one modulus, one order and one L-value set.
inline MomentRow assemble_row(const CharGroup& grp, RationalOrder k, const LValueSet& lvals,
                              const ResonatorSpec& spec) {
    using clock = std::chrono::steady_clock;
    const PrimeContext& ctx = grp.ctx();
    MomentRow row;
    row.q = ctx.q();
    row.k = k;
    row.x = spec.base_limit;
    row.X = lvals.trunc_X;
    row.method = to_string(lvals.method);

    const auto t0 = clock::now();
    const CharVector B = eval_all_characters(grp, spec.base);
    CharVector A = B;
    if (spec.power > 1)
        for (auto& z : A.entries) z = pow_complex(z, spec.power);
    const auto t1 = clock::now();

    row.M2k = moment_2k(lvals, k);
    row.S1 = compute_S1(lvals, B, k);
    row.S2 = compute_S2(A, k);
    row.S2_diag = compute_S2_diagonal(k, spec, ctx);
    row.S1_diag_lower = s1_diag_lower(k, spec, ctx);
    row.holder_bound = holder_lower_bound(std::abs(row.S1), row.S2, k);

    if (k.is_integer() && lvals.method == LMethod::truncated) {
        const S1MainParts parts = compute_S1_main(ctx, k, spec, lvals.trunc_X);
        row.S1_main = parts.diagonal;
        row.S1_off = parts.off_diagonal;
    }

    const double principal = std::pow(std::abs(A.entries[0]), k.two_k());
    row.resid_s2 = std::abs(row.S2 + principal - row.S2_diag) / row.S2_diag;
    row.resid_s1_imag = std::abs(row.S1.imag()) / (1.0 + std::abs(row.S1));

    const double lq = std::log(static_cast<double>(row.q));
    const double denom = static_cast<double>(row.q) * std::pow(lq, k.k_squared());
    row.ratio_moment = row.M2k / denom;
    row.ratio_bound = row.holder_bound / denom;

    const auto t2 = clock::now();
    row.t_resonator = std::chrono::duration<double>(t1 - t0).count();
    row.t_row = std::chrono::duration<double>(t2 - t0).count();
    return row;
}

} // namespace lfmom
