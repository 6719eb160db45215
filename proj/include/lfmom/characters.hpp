#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "lfmom/modarith.hpp"

namespace lfmom {

using cplx = std::complex<double>;

/// Index a in {0,...,q-2} labelling chi_a(n) = e(a*ind(n)/(q-1)); a = 0 is
/// the principal character.
struct CharId {
    std::uint64_t a = 0;
};

/// The character group mod q: the context plus one table of (q-1)-st roots
/// of unity. All character values are lookups; the index a*ind(n) is reduced
/// mod q-1 in integer arithmetic, never in floating point.
class CharGroup {
public:
    explicit CharGroup(const PrimeContext& ctx) : ctx_(&ctx), roots_(ctx.phi()) {
        const double step = 2.0 * std::numbers::pi / static_cast<double>(ctx.phi());
        for (std::uint64_t j = 0; j < ctx.phi(); ++j)
            roots_[j] = std::polar(1.0, step * static_cast<double>(j));
    }

    const PrimeContext& ctx() const { return *ctx_; }
    std::uint64_t q() const { return ctx_->q(); }
    std::uint64_t phi() const { return ctx_->phi(); }

    /// e((j mod phi)/phi)
    cplx root(std::uint64_t j) const { return roots_[j % ctx_->phi()]; }
    std::span<const cplx> roots() const { return roots_; }

    cplx chi(CharId id, std::uint64_t n) const {
        const std::uint64_t r = n % ctx_->q();
        if (r == 0) return 0.0;
        const std::uint64_t a = id.a % ctx_->phi();
        return roots_[a * ctx_->ind(r) % ctx_->phi()];
    }

    CharId conjugate(CharId id) const {
        return CharId{(ctx_->phi() - id.a % ctx_->phi()) % ctx_->phi()};
    }

    /// chi_a(-1); +1 for even a, -1 for odd a (ind(-1) = phi/2).
    int parity_sign(CharId id) const { return (id.a % 2 == 0) ? 1 : -1; }

private:
    const PrimeContext* ctx_;
    std::vector<cplx> roots_;
};

inline cplx chi_value(const CharGroup& grp, CharId a, std::uint64_t n) {
    return grp.chi(a, n);
}

namespace detail {

// Direct summation over all characters with an explicit root table; split out
// so tests can feed it a corrupted table.
inline cplx orthogonality_direct(const PrimeContext& ctx, std::span<const cplx> roots,
                                 std::uint64_t m, std::uint64_t n) {
    const std::uint64_t phi = ctx.phi();
    const std::uint64_t d = (ctx.ind(m) + phi - ctx.ind(n)) % phi;
    cplx acc = 0.0;
    std::uint64_t idx = 0; // a*d mod phi
    for (std::uint64_t a = 0; a < phi; ++a) {
        acc += roots[idx];
        idx += d;
        if (idx >= phi) idx -= phi;
    }
    return acc;
}

} // namespace detail

/// sum over all chi mod q of chi(m)*conj(chi(n)); equals phi(q) when
/// m = n (mod q) and 0 otherwise. Requires gcd(mn, q) = 1.
inline cplx orthogonality_sum(const CharGroup& grp, std::uint64_t m, std::uint64_t n) {
    if (grp.ctx().divides(m) || grp.ctx().divides(n))
        throw std::invalid_argument("orthogonality_sum: m and n must be coprime to q");
    return detail::orthogonality_direct(grp.ctx(), grp.roots(), m, n);
}

/// max over y <= q of |sum_{n<=y} chi_a(n)|, one pass of running sums.
/// The principal character is rejected: its prefix sums grow linearly.
inline double char_prefix_max(const CharGroup& grp, CharId id) {
    if (id.a % grp.phi() == 0)
        throw std::invalid_argument("char_prefix_max: nonprincipal character required");
    cplx run = 0.0;
    double best = 0.0;
    for (std::uint64_t n = 1; n < grp.q(); ++n) {
        run += grp.chi(id, n);
        best = std::max(best, std::abs(run));
    }
    return best;
}

} // namespace lfmom
