#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "lfmom/characters.hpp"

using namespace lfmom;

TEST_CASE("character values mod 5") {
    const PrimeContext ctx = build_context(5);
    const CharGroup grp(ctx);
    CHECK(std::abs(grp.chi({0}, 7) - cplx(1.0, 0.0)) < 1e-15);
    CHECK(std::abs(grp.chi({2}, 2) - cplx(-1.0, 0.0)) < 1e-15); // e(2*ind(2)/4) = e(1/2)
    CHECK(std::abs(grp.chi({1}, 10)) == 0.0);
}

TEST_CASE("characters are completely multiplicative") {
    const PrimeContext ctx = build_context(101);
    const CharGroup grp(ctx);
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::uint64_t> draw(1, 1'000'000);
    for (int i = 0; i < 500; ++i) {
        const CharId a{rng() % ctx.phi()};
        const std::uint64_t m = draw(rng), n = draw(rng);
        const cplx lhs = grp.chi(a, m * n);
        const cplx rhs = grp.chi(a, m) * grp.chi(a, n);
        CHECK(std::abs(lhs - rhs) <= 1e-12);
    }
}

TEST_CASE("conjugate character is the reflected index") {
    const PrimeContext ctx = build_context(101);
    const CharGroup grp(ctx);
    for (std::uint64_t a = 0; a < ctx.phi(); ++a) {
        const CharId conj_id = grp.conjugate({a});
        for (std::uint64_t n : {1ull, 2ull, 37ull, 100ull, 202ull})
            CHECK(std::abs(grp.chi(conj_id, n) - std::conj(grp.chi({a}, n))) <= 1e-12);
    }
}

TEST_CASE("full-period character sums cancel") {
    const PrimeContext ctx = build_context(101);
    const CharGroup grp(ctx);
    for (std::uint64_t a = 1; a < ctx.phi(); ++a) {
        cplx sum = 0.0;
        for (std::uint64_t n = 1; n <= ctx.q(); ++n) sum += grp.chi({a}, n);
        CHECK(std::abs(sum) <= 1e-10 * static_cast<double>(ctx.q()));
    }
}

TEST_CASE("orthogonality on the worked examples") {
    const PrimeContext c5 = build_context(5);
    const CharGroup g5(c5);
    CHECK(std::abs(orthogonality_sum(g5, 2, 7) - cplx(4.0, 0.0)) <= 1e-9 * 4.0);
    CHECK(std::abs(orthogonality_sum(g5, 2, 3)) <= 1e-9 * 4.0);

    const PrimeContext c3 = build_context(3);
    const CharGroup g3(c3);
    CHECK(std::abs(orthogonality_sum(g3, 1, 2)) <= 1e-9 * 2.0);

    CHECK_THROWS_AS(orthogonality_sum(g5, 5, 3), std::invalid_argument);
    CHECK_THROWS_AS(orthogonality_sum(g5, 3, 10), std::invalid_argument);
}

TEST_CASE("prefix sums of nonprincipal characters") {
    const PrimeContext c3 = build_context(3);
    const CharGroup g3(c3);
    CHECK(char_prefix_max(g3, {1}) == doctest::Approx(1.0).epsilon(1e-12));

    // chi_2 mod 5 is the Legendre symbol: values 1,-1,-1,1 give running sums
    // 1,0,-1,0, so the one-pass oracle returns 1
    const PrimeContext c5 = build_context(5);
    const CharGroup g5(c5);
    cplx run = 0.0;
    double oracle = 0.0;
    for (std::uint64_t n = 1; n <= 5; ++n) {
        run += g5.chi({2}, n);
        oracle = std::max(oracle, std::abs(run));
    }
    CHECK(oracle == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(char_prefix_max(g5, {2}) == doctest::Approx(oracle).epsilon(1e-12));

    CHECK_THROWS_AS(char_prefix_max(g5, {0}), std::invalid_argument);
}

TEST_CASE("Polya-Vinogradov bound with constant 1 holds at desk scale") {
    for (std::uint64_t q : {3ull, 5ull, 101ull, 499ull, 1009ull}) {
        const PrimeContext ctx = build_context(q);
        const CharGroup grp(ctx);
        const double bound = std::sqrt(static_cast<double>(q)) * std::log(static_cast<double>(q));
        for (std::uint64_t a = 1; a < ctx.phi(); ++a)
            CHECK(char_prefix_max(grp, {a}) <= bound);
    }
}

TEST_CASE("corrupted root table breaks orthogonality") {
    const PrimeContext ctx = build_context(101);
    const CharGroup grp(ctx);
    std::vector<cplx> bad(grp.roots().begin(), grp.roots().end());
    std::swap(bad[1], bad[50]);
    const cplx good = detail::orthogonality_direct(ctx, grp.roots(), 2, 2);
    const cplx broken = detail::orthogonality_direct(ctx, bad, 2, 3);
    CHECK(std::abs(good - cplx(100.0, 0.0)) <= 1e-9 * 100.0);
    CHECK(std::abs(broken) > 1e-6); // a zero sum no longer cancels
}
