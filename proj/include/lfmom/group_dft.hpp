#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

namespace lfmom {
namespace dft {

using cplx = std::complex<double>;

// Transform over the cyclic character index: out[a] = sum_j g[j] e(sign*a*j/N),
// e(t) = exp(2*pi*i*t). N = q-1 is arbitrary (generally not smooth), so the
// fast path is a Bluestein chirp-z embedded in a power-of-two FFT.

namespace detail {

inline std::size_t next_pow2(std::size_t n) {
    std::size_t m = 1;
    while (m < n) m <<= 1;
    return m;
}

inline void fft_radix2(std::vector<cplx>& a, bool inverse) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)))
        throw std::invalid_argument("fft_radix2: length must be a power of two");
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = 2.0 * std::numbers::pi / static_cast<double>(len) * (inverse ? -1.0 : 1.0);
        const cplx wlen = std::polar(1.0, ang);
        for (std::size_t i = 0; i < n; i += len) {
            cplx w = 1.0;
            for (std::size_t k = 0; k < len / 2; ++k) {
                const cplx u = a[i + k];
                const cplx v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
    if (inverse) {
        const double inv = 1.0 / static_cast<double>(n);
        for (auto& z : a) z *= inv;
    }
}

} // namespace detail

inline std::vector<cplx> group_transform_naive(std::span<const cplx> g, int sign) {
    const std::uint64_t n = g.size();
    std::vector<cplx> roots(n);
    for (std::uint64_t j = 0; j < n; ++j)
        roots[j] = std::polar(1.0, sign * 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n));
    std::vector<cplx> out(n);
    for (std::uint64_t a = 0; a < n; ++a) {
        cplx acc = 0.0;
        std::uint64_t idx = 0; // a*j mod n, stepped exactly in integers
        for (std::uint64_t j = 0; j < n; ++j) {
            acc += g[j] * roots[idx];
            idx += a;
            if (idx >= n) idx -= n;
        }
        out[a] = acc;
    }
    return out;
}

inline std::vector<cplx> group_transform_bluestein(std::span<const cplx> g, int sign) {
    const std::uint64_t n = g.size();
    if (n == 0) return {};
    const std::size_t m = detail::next_pow2(2 * n - 1);
    // chirp c[i] = e(sign*i^2/(2n)); the square is reduced mod 2n in integer
    // arithmetic before touching floating point.
    std::vector<cplx> chirp(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        const std::uint64_t sq = (i * i) % (2 * n);
        chirp[i] = std::polar(1.0, sign * std::numbers::pi * static_cast<double>(sq) / static_cast<double>(n));
    }
    std::vector<cplx> u(m, 0.0), h(m, 0.0);
    for (std::uint64_t j = 0; j < n; ++j) u[j] = g[j] * chirp[j];
    h[0] = std::conj(chirp[0]);
    for (std::uint64_t d = 1; d < n; ++d) h[d] = h[m - d] = std::conj(chirp[d]);
    detail::fft_radix2(u, false);
    detail::fft_radix2(h, false);
    for (std::size_t i = 0; i < m; ++i) u[i] *= h[i];
    detail::fft_radix2(u, true);
    std::vector<cplx> out(n);
    for (std::uint64_t a = 0; a < n; ++a) out[a] = chirp[a] * u[a];
    return out;
}

// q <= 4096 (N <= 4095) runs the quadratic loop; anything larger goes through
// Bluestein.
inline constexpr std::size_t kNaiveLengthCap = 4095;

inline std::vector<cplx> group_transform(std::span<const cplx> g, int sign,
                                         std::size_t naive_cap = kNaiveLengthCap) {
    if (g.size() <= naive_cap) return group_transform_naive(g, sign);
    return group_transform_bluestein(g, sign);
}

} // namespace dft
} // namespace lfmom
