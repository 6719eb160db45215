#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace lfmom {

namespace detail {

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<__uint128_t>(a) * b) % m);
}

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) r = mul_mod(r, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return r;
}

} // namespace detail

/// Deterministic Miller-Rabin for the full 64-bit range.
inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    std::uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) { d >>= 1; ++r; }
    // witness set proven deterministic for n < 3.3e24 (Sorenson & Webster)
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = detail::pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < r; ++i) {
            x = detail::mul_mod(x, x, n);
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

namespace detail {

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> fac;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            fac.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) fac.push_back(n);
    return fac;
}

} // namespace detail

/// Smallest primitive root mod a prime q >= 3, certified by checking
/// g^((q-1)/p) != 1 for every prime p | q-1.
inline std::uint64_t find_primitive_root(std::uint64_t q) {
    if (!is_prime(q) || q < 3)
        throw std::invalid_argument("find_primitive_root: q must be an odd prime");
    const auto fac = detail::prime_factors(q - 1);
    for (std::uint64_t g = 2; g < q; ++g) {
        bool ok = true;
        for (std::uint64_t p : fac) {
            if (detail::pow_mod(g, (q - 1) / p, q) == 1) { ok = false; break; }
        }
        if (ok) return g;
    }
    throw std::logic_error("find_primitive_root: no generator found");
}

/// A prime modulus together with the discrete-log (ind) and power tables
/// that index its character group. Immutable after construction, safe to
/// share read-only across threads.
class PrimeContext {
public:
    static constexpr std::uint64_t kDefaultMaxQ = 4'000'000;

    explicit PrimeContext(std::uint64_t q, std::uint64_t max_q = kDefaultMaxQ) : q_(q) {
        if (!is_prime(q) || q < 3)
            throw std::invalid_argument("PrimeContext: modulus must be an odd prime");
        if (q > max_q)
            throw std::length_error("PrimeContext: modulus exceeds the table memory budget");
        g_ = find_primitive_root(q);
        phi_ = q - 1;
        pow_.resize(phi_);
        ind_.assign(q, 0);
        std::uint64_t v = 1;
        for (std::uint64_t j = 0; j < phi_; ++j) {
            pow_[j] = static_cast<std::uint32_t>(v);
            ind_[v] = static_cast<std::uint32_t>(j);
            v = v * g_ % q_;
        }
    }

    std::uint64_t q() const { return q_; }
    std::uint64_t g() const { return g_; }
    std::uint64_t phi() const { return phi_; }

    /// Discrete log base g of n (mod q); requires q does not divide n.
    std::uint64_t ind(std::uint64_t n) const {
        const std::uint64_t r = n % q_;
        return ind_[r];
    }
    std::uint64_t pow_of(std::uint64_t j) const { return pow_[j % phi_]; }
    bool divides(std::uint64_t n) const { return n % q_ == 0; }

private:
    std::uint64_t q_;
    std::uint64_t g_ = 0;
    std::uint64_t phi_ = 0;
    std::vector<std::uint32_t> ind_; // ind_[n] for n in [1, q-1]; slot 0 unused
    std::vector<std::uint32_t> pow_; // pow_[j] = g^j mod q
};

inline PrimeContext build_context(std::uint64_t q,
                                  std::uint64_t max_q = PrimeContext::kDefaultMaxQ) {
    return PrimeContext(q, max_q);
}

} // namespace lfmom
