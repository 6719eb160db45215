#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "lfmom/moments.hpp"
#include "lfmom/report.hpp"

namespace lfmom {

/// One verification check: measured residual against its tolerance, plus a
/// free-form note for reported-but-not-asserted quantities.
struct CheckResult {
    std::string name;
    double measured = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string note;
};

namespace verify {

/// Orthogonality: random (m, n) coprime to q against phi(q)*[m = n mod q].
/// Half the draws are forced onto the diagonal so both branches are hit.
inline CheckResult orthogonality(const std::vector<std::uint64_t>& moduli, int pairs,
                                 std::uint64_t seed = 0xC0FFEEULL) {
    double worst = 0.0;
    double tol = 0.0;
    std::mt19937_64 rng(seed);
    for (std::uint64_t q : moduli) {
        PrimeContext ctx(q);
        CharGroup grp(ctx);
        const double phi = static_cast<double>(ctx.phi());
        std::uniform_int_distribution<std::uint64_t> draw(1, 1'000'000'000ull);
        for (int i = 0; i < pairs; ++i) {
            std::uint64_t m = draw(rng), n = draw(rng);
            while (m % q == 0) m = draw(rng);
            if (i % 2 == 0) {
                n = m + q * (draw(rng) % 1000);
            } else {
                while (n % q == 0) n = draw(rng);
            }
            const cplx got = orthogonality_sum(grp, m, n);
            const double want = (m % q == n % q) ? phi : 0.0;
            worst = std::max(worst, std::abs(got - want) / phi);
        }
        tol = 1e-9; // relative to phi(q)
    }
    return {"orthogonality", worst, tol, worst <= tol, ""};
}

/// Exhaustive ordered-factorization count with every factor <= x; recursion
/// over leading divisors, no tables shared with the sieve under test.
inline std::uint64_t count_factorizations(std::uint64_t n, std::uint32_t parts, std::uint64_t x) {
    if (parts == 1) return (n >= 1 && n <= x) ? 1 : 0;
    std::uint64_t total = 0;
    for (std::uint64_t d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        if (d <= x) total += count_factorizations(n / d, parts - 1, x);
        const std::uint64_t e = n / d;
        if (e != d && e <= x) total += count_factorizations(d, parts - 1, x);
    }
    return total;
}

inline CheckResult restricted_divisor_bruteforce(std::uint64_t n_max,
                                                 const std::vector<std::uint32_t>& orders,
                                                 const std::vector<std::uint64_t>& caps) {
    std::uint64_t mismatches = 0;
    for (std::uint32_t l : orders) {
        for (std::uint64_t x : caps) {
            const RestrictedDivisorTable t = restricted_dk(l, x, n_max);
            for (std::uint64_t n = 1; n <= n_max; ++n)
                if (t.at(n) != count_factorizations(n, l, x)) ++mismatches;
        }
    }
    return {"restricted_divisor_bruteforce", static_cast<double>(mismatches), 0.0,
            mismatches == 0, "exact integer comparison"};
}

/// sum_{an=b, a<=x^{k-1}, n<=x} d_{k-1}(a;x) = d_k(b;x), exact for all b <= x^k.
inline CheckResult convolution_identity(const std::vector<std::uint32_t>& ks, std::uint64_t x_max) {
    std::uint64_t mismatches = 0;
    for (std::uint32_t k : ks) {
        for (std::uint64_t x = 1; x <= x_max; ++x) {
            std::uint64_t acap = 1, bcap = 1;
            for (std::uint32_t i = 0; i + 1 < k; ++i) acap *= x;
            bcap = acap * x;
            const RestrictedDivisorTable dk1 =
                k >= 2 ? restricted_dk(k - 1, x, acap) : restricted_dk(1, 1, 1);
            const RestrictedDivisorTable dk = restricted_dk(k, x, bcap);
            std::vector<std::uint64_t> lhs(bcap + 1, 0);
            for (std::uint64_t a = 1; a <= acap; ++a) {
                if (dk1.at(a) == 0) continue;
                for (std::uint64_t n = 1; n <= x && a * n <= bcap; ++n)
                    lhs[a * n] += dk1.at(a);
            }
            for (std::uint64_t b = 1; b <= bcap; ++b)
                if (lhs[b] != dk.at(b)) ++mismatches;
        }
    }
    return {"convolution_identity", static_cast<double>(mismatches), 0.0, mismatches == 0,
            "exact integer comparison"};
}

/// compute_S2 + |A(chi_0)|^{2k} against the arithmetic diagonal, relative.
inline CheckResult s2_identity(const std::vector<std::uint64_t>& moduli,
                               const std::vector<RationalOrder>& orders, double tol = 1e-8) {
    double worst = 0.0;
    for (std::uint64_t q : moduli) {
        PrimeContext ctx(q);
        CharGroup grp(ctx);
        for (const RationalOrder& k : orders) {
            const ResonatorSpec spec = build_spec(ctx, k);
            const CharVector A = resonator_values(grp, spec);
            const double s2 = compute_S2(A, k);
            const double principal = std::pow(std::abs(A.entries[0]), k.two_k());
            const double diag = compute_S2_diagonal(k, spec, ctx);
            worst = std::max(worst, std::abs(s2 + principal - diag) / diag);
        }
    }
    return {"s2_exact_identity", worst, tol, worst <= tol, ""};
}

/// Hurwitz self-tests: zeta(s,1/2) = (2^s-1) zeta(s) and the shift recurrence
/// zeta(s,1/4) - zeta(s,5/4) = 4^s at s = 1/2.
inline CheckResult hurwitz_identities(double tol = 1e-11) {
    const double z1 = hurwitz_zeta(0.5, 1.0);
    const double zh = hurwitz_zeta(0.5, 0.5);
    const double r1 = std::abs(zh - (std::sqrt(2.0) - 1.0) * z1);
    const double quarter = hurwitz_zeta(0.5, 0.25);
    const double five_quarters = detail::hurwitz_em(0.5, 1.25, 25, 12);
    const double r2 = std::abs((quarter - five_quarters) - 2.0);
    const double worst = std::max(r1, r2);
    return {"hurwitz_identities", worst, tol, worst <= tol, ""};
}

inline CheckResult functional_equation(const std::vector<std::uint64_t>& moduli) {
    double worst_rel = 0.0;
    for (std::uint64_t q : moduli) {
        PrimeContext ctx(q);
        CharGroup grp(ctx);
        const LValueSet lv = l_oracle(grp);
        const double resid = functional_equation_residual(grp, lv);
        worst_rel = std::max(worst_rel, resid / std::sqrt(static_cast<double>(q)));
    }
    return {"functional_equation_residual", worst_rel, 1e-8, worst_rel <= 1e-8,
            "residual / sqrt(q)"};
}

inline CheckResult conjugate_symmetry(const std::vector<std::uint64_t>& moduli,
                                      double tol = 1e-9) {
    double worst = 0.0;
    for (std::uint64_t q : moduli) {
        PrimeContext ctx(q);
        CharGroup grp(ctx);
        const LValueSet lv = l_oracle(grp);
        for (std::uint64_t a = 1; a + 1 < q; ++a)
            worst = std::max(worst,
                             std::abs(lv.vals[(ctx.phi() - a) % ctx.phi()] - std::conj(lv.vals[a])));
    }
    return {"lvalue_conjugate_symmetry", worst, tol, worst <= tol, ""};
}

struct TruncationLawResult {
    CheckResult bound;
    CheckResult decay;
};

/// max_a |truncated - oracle| <= 3 sqrt(q) ln q / sqrt(X) at X = ceil(q ln^4 q),
/// and doubling X contracts the max deviation by a factor near 1/sqrt(2).
inline TruncationLawResult truncation_law(const std::vector<std::uint64_t>& moduli,
                                          double lo = 0.6, double hi = 0.8) {
    double worst_ratio_to_bound = 0.0;
    bool decay_ok = true;
    std::string note;
    for (std::uint64_t q : moduli) {
        PrimeContext ctx(q);
        CharGroup grp(ctx);
        const LValueSet oracle = l_oracle(grp);
        const std::uint64_t X = default_truncation(q);
        double devs[2] = {0.0, 0.0};
        for (int pass = 0; pass < 2; ++pass) {
            const std::uint64_t Xp = X << pass;
            const LValueSet trunc = l_truncated(grp, Xp);
            double dev = 0.0;
            for (std::uint64_t a = 1; a + 1 < q; ++a)
                dev = std::max(dev, std::abs(trunc.vals[a] - oracle.vals[a]));
            devs[pass] = dev;
            const double bound = 3.0 * std::sqrt(static_cast<double>(q)) *
                                 std::log(static_cast<double>(q)) /
                                 std::sqrt(static_cast<double>(Xp));
            worst_ratio_to_bound = std::max(worst_ratio_to_bound, dev / bound);
        }
        const double shrink = devs[1] / devs[0];
        if (shrink < lo || shrink > hi) decay_ok = false;
        note += "q=" + std::to_string(q) + " shrink=" + std::to_string(shrink) + " ";
    }
    CheckResult bound{"truncation_bound", worst_ratio_to_bound, 1.0, worst_ratio_to_bound <= 1.0,
                      "max deviation / (3 sqrt(q) ln q / sqrt(X))"};
    CheckResult decay{"truncation_decay", decay_ok ? 1.0 : 0.0, 1.0, decay_ok, note};
    return {bound, decay};
}

/// holder_bound <= M2k (1 + 1e-10) with oracle L-values.
inline CheckResult holder(const std::vector<std::uint64_t>& moduli,
                          const std::vector<RationalOrder>& orders) {
    double worst = 0.0; // max of holder/M2k over the grid
    for (std::uint64_t q : moduli) {
        PrimeContext ctx(q);
        CharGroup grp(ctx);
        const LValueSet lv = l_oracle(grp);
        for (const RationalOrder& k : orders) {
            const ResonatorSpec spec = build_spec(ctx, k);
            const CharVector B = eval_all_characters(grp, spec.base);
            CharVector A = B;
            if (spec.power > 1)
                for (auto& z : A.entries) z = pow_complex(z, spec.power);
            const double m2k = moment_2k(lv, k);
            const cplx s1 = compute_S1(lv, B, k);
            const double s2 = compute_S2(A, k);
            const double hb = holder_lower_bound(std::abs(s1), s2, k);
            worst = std::max(worst, hb / m2k);
        }
    }
    const double tol = 1.0 + 1e-10;
    return {"holder_inequality", worst, tol, worst <= tol, "max holder_bound / M2k"};
}

struct S1ConsistencyResult {
    CheckResult identity;
    CheckResult off_ratio;
};

/// The all-character truncated twisted sum against the congruence sum
/// (exact orthogonality identity), and the measured off/diagonal split.
inline S1ConsistencyResult s1_consistency(const std::vector<std::uint64_t>& moduli,
                                          RationalOrder k, double tol = 1e-8) {
    double worst_rel = 0.0;
    double worst_ratio = 0.0;
    std::string note;
    for (std::uint64_t q : moduli) {
        PrimeContext ctx(q);
        CharGroup grp(ctx);
        const ResonatorSpec spec = build_spec(ctx, k);
        const std::uint64_t X = default_truncation(q);
        const CharVector twisted = truncated_char_vector(grp, X);
        const CharVector B = eval_all_characters(grp, spec.base);
        const auto e1 = static_cast<std::uint32_t>(k.r() - k.s());
        const auto e2 = static_cast<std::uint32_t>(k.r());
        KahanComplex all_chars;
        for (std::size_t a = 0; a < B.entries.size(); ++a)
            all_chars.add(twisted.entries[a] * pow_complex(B.entries[a], e1) *
                          pow_complex(std::conj(B.entries[a]), e2));
        const S1MainParts parts = compute_S1_main(ctx, k, spec, X);
        const double rel = std::abs(all_chars.value() - parts.total()) / std::abs(parts.total());
        const double ratio = parts.off_diagonal / parts.diagonal;
        worst_rel = std::max(worst_rel, rel);
        worst_ratio = std::max(worst_ratio, ratio);
        note += "q=" + std::to_string(q) + " off/diag=" + std::to_string(ratio) + " ";
    }
    CheckResult identity{"s1_orthogonality_identity", worst_rel, tol, worst_rel <= tol, ""};
    CheckResult ratio{"s1_off_diagonal_ratio", worst_ratio, 1.0, worst_ratio < 1.0, note};
    return {identity, ratio};
}

struct GrowthBandResult {
    CheckResult band;
    std::vector<double> ratios;
};

/// ratio_bound = holder_bound / (q (ln q)^{k^2}) across an increasing prime
/// grid stays in a band [c, C] with C/c <= width and c > 0.
inline GrowthBandResult growth_band(const std::vector<std::uint64_t>& moduli, RationalOrder k,
                                    double width = 5.0) {
    std::vector<double> ratios;
    for (std::uint64_t q : moduli) {
        PrimeContext ctx(q);
        CharGroup grp(ctx);
        const LValueSet lv = l_oracle(grp);
        const ResonatorSpec spec = build_spec(ctx, k);
        const MomentRow row = assemble_row(grp, k, lv, spec);
        ratios.push_back(row.ratio_bound);
    }
    const double c = *std::min_element(ratios.begin(), ratios.end());
    const double C = *std::max_element(ratios.begin(), ratios.end());
    const bool pass = c > 0.0 && C / c <= width;
    std::string note = "band [" + report::fmt(c) + ", " + report::fmt(C) + "]";
    return {{"growth_band", C / std::max(c, 1e-300), width, pass, note}, ratios};
}

} // namespace verify
} // namespace lfmom
