#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "lfmom/modarith.hpp"

using namespace lfmom;

namespace {

bool trial_division_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

} // namespace

TEST_CASE("is_prime matches trial division on small range") {
    CHECK(is_prime(2));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(0));
    CHECK(is_prime(1009));
    for (std::uint64_t n = 0; n <= 10000; ++n)
        CHECK(is_prime(n) == trial_division_prime(n));
}

TEST_CASE("is_prime handles 64-bit scale inputs") {
    CHECK(is_prime(2305843009213693951ull)); // 2^61 - 1
    CHECK_FALSE(is_prime(3215031751ull));    // strong pseudoprime to bases 2,3,5,7
    CHECK_FALSE(is_prime(2305843009213693951ull * 2));
    CHECK(is_prime(1000000007ull));
    CHECK_FALSE(is_prime(1000000007ull * 1000000009ull));
}

TEST_CASE("find_primitive_root on small primes") {
    CHECK(find_primitive_root(3) == 2);
    CHECK(find_primitive_root(5) == 2);
    CHECK(find_primitive_root(7) == 3);
    CHECK_THROWS_AS(find_primitive_root(8), std::invalid_argument);
    CHECK_THROWS_AS(find_primitive_root(1), std::invalid_argument);
    CHECK_THROWS_AS(find_primitive_root(2), std::invalid_argument);
}

TEST_CASE("primitive root has full multiplicative order") {
    for (std::uint64_t q : {5ull, 101ull, 499ull, 1009ull, 6421ull}) {
        const std::uint64_t g = find_primitive_root(q);
        CHECK(detail::pow_mod(g, q - 1, q) == 1);
        std::uint64_t m = q - 1;
        for (std::uint64_t p = 2; p * p <= m; ++p) {
            if (m % p == 0) {
                CHECK(detail::pow_mod(g, (q - 1) / p, q) != 1);
                while (m % p == 0) m /= p;
            }
        }
        if (m > 1) CHECK(detail::pow_mod(g, (q - 1) / m, q) != 1);
    }
}

TEST_CASE("context tables for q=5 and q=3") {
    const PrimeContext c5 = build_context(5);
    CHECK(c5.g() == 2);
    CHECK(c5.ind(1) == 0);
    CHECK(c5.ind(2) == 1);
    CHECK(c5.ind(4) == 2);
    CHECK(c5.ind(3) == 3);

    const PrimeContext c3 = build_context(3);
    CHECK(c3.g() == 2);
    CHECK(c3.ind(1) == 0);
    CHECK(c3.ind(2) == 1);
    CHECK(c3.phi() == 2);
}

TEST_CASE("pow and ind are inverse bijections for q=1009") {
    const PrimeContext ctx = build_context(1009);
    std::vector<bool> seen(ctx.phi(), false);
    for (std::uint64_t n = 1; n < ctx.q(); ++n) {
        const std::uint64_t j = ctx.ind(n);
        CHECK(ctx.pow_of(j) == n);
        CHECK_FALSE(seen[j]);
        seen[j] = true;
    }
    for (std::uint64_t j = 0; j < ctx.phi(); ++j)
        CHECK(ctx.ind(ctx.pow_of(j)) == j);
}

TEST_CASE("discrete log is a homomorphism") {
    const PrimeContext ctx = build_context(1009);
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<std::uint64_t> draw(1, ctx.q() - 1);
    for (int i = 0; i < 1000; ++i) {
        const std::uint64_t m = draw(rng), n = draw(rng);
        CHECK(ctx.ind(m * n % ctx.q()) == (ctx.ind(m) + ctx.ind(n)) % ctx.phi());
    }
}

TEST_CASE("context construction rejects bad moduli") {
    CHECK_THROWS_AS(build_context(100), std::invalid_argument);
    CHECK_THROWS_AS(build_context(2), std::invalid_argument);
    CHECK_THROWS_AS(build_context(1), std::invalid_argument);
    CHECK_THROWS_AS(build_context(1009, 500), std::length_error);
}
