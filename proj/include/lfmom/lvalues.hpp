#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "lfmom/resonator.hpp"
#include "lfmom/summation.hpp"

namespace lfmom {

namespace detail {

// B_{2j}/(2j)! for the Euler-Maclaurin tail, j = 0..14.
inline constexpr double kBernoulliOverFactorial[15] = {
    1.0,
    0.083333333333333333333333333333,
    -0.00138888888888888888888888888889,
    0.000033068783068783068783068783069,
    -8.2671957671957671957671957672e-07,
    2.0876756987868098979210090321e-08,
    -5.2841901386874931848476822022e-10,
    1.3382536530684678832826980975e-11,
    -3.3896802963225828668301953912e-13,
    8.5860620562778445641359054504e-15,
    -2.1748686985580618730415164239e-16,
    5.5090028283602295152026526089e-18,
    -1.3954464685812523340707686264e-19,
    3.5347070396294674716932299778e-21,
    -8.9535174270375468504026113181e-23,
};

// Euler-Maclaurin evaluation of zeta(s, alpha) for alpha > 0, s != 1:
//   sum_{m<M} (m+alpha)^{-s} + (M+alpha)^{1-s}/(s-1) + (M+alpha)^{-s}/2
//   + sum_{j>=1} B_{2j}/(2j)! * s(s+1)...(s+2j-2) * (M+alpha)^{-s-2j+1}
inline double hurwitz_em(double s, double alpha, int shift, int bernoulli_terms) {
    if (shift < 1) shift = 1;
    if (bernoulli_terms < 0) bernoulli_terms = 0;
    if (bernoulli_terms > 14) bernoulli_terms = 14;
    Kahan direct;
    for (int m = 0; m < shift; ++m)
        direct.add(std::pow(static_cast<double>(m) + alpha, -s));
    const double base = static_cast<double>(shift) + alpha;
    const double pmax = std::pow(base, -s);
    double ans = direct.value() + pmax * (base / (s - 1.0) + 0.5);
    double scp = s;                // rising factorial s(s+1)...(s+2j-2)
    double pcp = pmax / base;      // (shift+alpha)^{-s-2j+1}
    for (int j = 1; j <= bernoulli_terms; ++j) {
        const double delta = kBernoulliOverFactorial[j] * scp * pcp;
        ans += delta;
        if (std::abs(delta) < 1e-18 * std::abs(ans)) break;
        scp *= (s + 2.0 * j - 1.0) * (s + 2.0 * j);
        pcp /= base * base;
    }
    return ans;
}

} // namespace detail

struct HurwitzOptions {
    int shift = 25;           // direct terms before the asymptotic tail
    int bernoulli_terms = 12; // Bernoulli correction terms
};

/// zeta(s, alpha) = sum_{m>=0} (m+alpha)^{-s} for alpha in (0,1], s != 1.
/// Absolute error <= 1e-12 with the defaults at desk scale.
inline double hurwitz_zeta(double s, double alpha, HurwitzOptions opt = {}) {
    if (s == 1.0) throw std::domain_error("hurwitz_zeta: pole at s = 1");
    if (!(alpha > 0.0) || alpha > 1.0)
        throw std::domain_error("hurwitz_zeta: alpha must lie in (0, 1]");
    return detail::hurwitz_em(s, alpha, opt.shift, opt.bernoulli_terms);
}

enum class LMethod { oracle, truncated };

inline std::string to_string(LMethod m) {
    return m == LMethod::oracle ? "oracle" : "truncated";
}

/// Central values L(1/2, chi_a) for the nonprincipal characters mod q,
/// a in {1,...,q-2}. Slot 0 is kept zero so the vector aligns with CharVector.
struct LValueSet {
    std::uint64_t q = 0;
    LMethod method = LMethod::oracle;
    std::uint64_t trunc_X = 0; // 0 for the oracle route
    std::vector<cplx> vals;    // size q-1, index a

    const cplx& value(std::uint64_t a) const {
        if (a == 0 || a >= static_cast<std::uint64_t>(vals.size()))
            throw std::out_of_range("LValueSet: nonprincipal index required");
        return vals[a];
    }
};

/// Ground-truth central values via L(1/2, chi) = q^{-1/2} sum_r chi(r) zeta(1/2, r/q):
/// one Hurwitz vector, then a single group transform evaluates every character.
inline LValueSet l_oracle(const CharGroup& grp, HurwitzOptions opt = {}) {
    const PrimeContext& ctx = grp.ctx();
    const std::uint64_t q = ctx.q();
    const double norm = 1.0 / std::sqrt(static_cast<double>(q));
    std::vector<cplx> buckets(ctx.phi(), 0.0);
    for (std::uint64_t r = 1; r < q; ++r) {
        const double hz = detail::hurwitz_em(0.5, static_cast<double>(r) / static_cast<double>(q),
                                             opt.shift, opt.bernoulli_terms);
        buckets[ctx.ind(r)] += norm * hz;
    }
    CharVector v = detail::transform_buckets(grp, std::move(buckets));
    LValueSet out{q, LMethod::oracle, 0, std::move(v.entries)};
    out.vals[0] = 0.0;
    return out;
}

inline constexpr std::uint64_t kDefaultMaxTruncation = 1'000'000'000;

/// Default truncation point X = ceil(q ln^4 q) (natural log).
inline std::uint64_t default_truncation(std::uint64_t q) {
    const double lq = std::log(static_cast<double>(q));
    return static_cast<std::uint64_t>(std::ceil(static_cast<double>(q) * lq * lq * lq * lq));
}

/// Partial sums sum_{n<=X} chi_a(n)/sqrt(n) for every a at once (a = 0
/// included): fold n into residue classes, then transform. O(X + q log q).
inline CharVector truncated_char_vector(const CharGroup& grp, std::uint64_t X,
                                        std::uint64_t max_X = kDefaultMaxTruncation) {
    const PrimeContext& ctx = grp.ctx();
    const std::uint64_t q = ctx.q();
    if (X < q) throw std::invalid_argument("truncated_char_vector: X >= q required");
    if (X > max_X) throw std::length_error("truncated_char_vector: X exceeds the configured cap");
    std::vector<double> residue_sum(q, 0.0);
    std::uint64_t r = 0;
    for (std::uint64_t n = 1; n <= X; ++n) {
        if (++r == q) r = 0;
        if (r == 0) continue;
        residue_sum[r] += 1.0 / std::sqrt(static_cast<double>(n));
    }
    std::vector<cplx> buckets(ctx.phi(), 0.0);
    for (std::uint64_t rr = 1; rr < q; ++rr) buckets[ctx.ind(rr)] += residue_sum[rr];
    return detail::transform_buckets(grp, std::move(buckets));
}

/// The truncated-series approximation to L(1/2, chi); the deviation from the
/// oracle obeys the sqrt(q) log q / sqrt(X) law checked in the test suites.
inline LValueSet l_truncated(const CharGroup& grp, std::uint64_t X,
                             std::uint64_t max_X = kDefaultMaxTruncation) {
    CharVector v = truncated_char_vector(grp, X, max_X);
    LValueSet out{grp.q(), LMethod::truncated, X, std::move(v.entries)};
    out.vals[0] = 0.0;
    return out;
}

/// tau(chi_a) = sum_n chi_a(n) e(n/q); |tau| = sqrt(q) for a != 0.
inline cplx gauss_sum(const CharGroup& grp, CharId id) {
    if (id.a % grp.phi() == 0)
        throw std::invalid_argument("gauss_sum: nonprincipal character required");
    const std::uint64_t q = grp.q();
    KahanComplex acc;
    for (std::uint64_t n = 1; n < q; ++n) {
        const cplx e_nq =
            std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(n) / static_cast<double>(q));
        acc.add(grp.chi(id, n) * e_nq);
    }
    return acc.value();
}

/// All Gauss sums at once through the group transform (complex buckets).
inline CharVector gauss_sums_all(const CharGroup& grp) {
    const PrimeContext& ctx = grp.ctx();
    const std::uint64_t q = ctx.q();
    std::vector<cplx> buckets(ctx.phi(), 0.0);
    for (std::uint64_t n = 1; n < q; ++n)
        buckets[ctx.ind(n)] +=
            std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(n) / static_cast<double>(q));
    return detail::transform_buckets(grp, std::move(buckets));
}

/// max_a |L(1/2,chi_a) - eps(chi_a) L(1/2,conj chi_a)| with
/// eps(chi) = tau(chi)/(i^a0 sqrt(q)), a0 = 0 for even chi and 1 for odd chi.
/// An independent consistency check of an oracle LValueSet.
inline double functional_equation_residual(const CharGroup& grp, const LValueSet& lvals) {
    const std::uint64_t q = grp.q();
    const std::uint64_t phi = grp.phi();
    const double sq = std::sqrt(static_cast<double>(q));
    const CharVector tau = gauss_sums_all(grp);
    double worst = 0.0;
    for (std::uint64_t a = 1; a + 1 < q; ++a) {
        const cplx denom = (a % 2 == 0) ? cplx(sq, 0.0) : cplx(0.0, sq);
        const cplx eps = tau.entries[a] / denom;
        const cplx other = lvals.vals[(phi - a) % phi];
        worst = std::max(worst, std::abs(lvals.vals[a] - eps * other));
    }
    return worst;
}

} // namespace lfmom
