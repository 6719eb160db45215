#pragma once

#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "lfmom/lvalues.hpp"

namespace lfmom {

// Per-(q, method) binary cache of L-values. Layout, all fields little-endian:
//   magic "LFMV", version u32, q u64, method u32, em_shift u32,
//   em_bernoulli u32, reserved u32, X u64, count u64,
//   count * (a u64, re f64, im f64), fnv1a64 checksum of everything before it.
namespace cache {

inline constexpr char kMagic[4] = {'L', 'F', 'M', 'V'};
inline constexpr std::uint32_t kVersion = 1;

namespace detail {

inline void put_u32(std::vector<unsigned char>& buf, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) buf.push_back(static_cast<unsigned char>(v >> (8 * i)));
}
inline void put_u64(std::vector<unsigned char>& buf, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) buf.push_back(static_cast<unsigned char>(v >> (8 * i)));
}
inline void put_f64(std::vector<unsigned char>& buf, double d) {
    std::uint64_t v;
    std::memcpy(&v, &d, 8);
    put_u64(buf, v);
}

class Reader {
public:
    Reader(const unsigned char* p, std::size_t n) : p_(p), n_(n) {}
    bool u32(std::uint32_t& v) {
        if (pos_ + 4 > n_) return false;
        v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(p_[pos_ + i]) << (8 * i);
        pos_ += 4;
        return true;
    }
    bool u64(std::uint64_t& v) {
        if (pos_ + 8 > n_) return false;
        v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(p_[pos_ + i]) << (8 * i);
        pos_ += 8;
        return true;
    }
    bool f64(double& d) {
        std::uint64_t v;
        if (!u64(v)) return false;
        std::memcpy(&d, &v, 8);
        return true;
    }
    bool bytes(char* dst, std::size_t k) {
        if (pos_ + k > n_) return false;
        std::memcpy(dst, p_ + pos_, k);
        pos_ += k;
        return true;
    }
    std::size_t pos() const { return pos_; }

private:
    const unsigned char* p_;
    std::size_t n_;
    std::size_t pos_ = 0;
};

inline std::uint64_t fnv1a(const unsigned char* p, std::size_t n) {
    std::uint64_t h = 14695981039346656037ull;
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace detail

struct Key {
    std::uint64_t q = 0;
    LMethod method = LMethod::oracle;
    std::uint32_t em_shift = 25;
    std::uint32_t em_bernoulli = 12;
    std::uint64_t X = 0;
};

inline std::filesystem::path file_path(const std::filesystem::path& dir, const Key& key) {
    const std::string tag = key.method == LMethod::oracle ? "oracle" : "trunc";
    return dir / ("lvalues_q" + std::to_string(key.q) + "_" + tag + ".bin");
}

inline void store(const std::filesystem::path& path, const Key& key, const LValueSet& set) {
    std::vector<unsigned char> buf;
    buf.reserve(32 + 24 * set.vals.size());
    for (char c : kMagic) buf.push_back(static_cast<unsigned char>(c));
    detail::put_u32(buf, kVersion);
    detail::put_u64(buf, key.q);
    detail::put_u32(buf, key.method == LMethod::oracle ? 0u : 1u);
    detail::put_u32(buf, key.em_shift);
    detail::put_u32(buf, key.em_bernoulli);
    detail::put_u32(buf, 0); // reserved
    detail::put_u64(buf, key.X);
    const std::uint64_t count = key.q - 2;
    detail::put_u64(buf, count);
    for (std::uint64_t a = 1; a <= count; ++a) {
        detail::put_u64(buf, a);
        detail::put_f64(buf, set.vals[a].real());
        detail::put_f64(buf, set.vals[a].imag());
    }
    detail::put_u64(buf, detail::fnv1a(buf.data(), buf.size()));

    std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
}

/// Returns the cached set only when magic, version, key fields, record count
/// and checksum all validate; any mismatch means "recompute".
inline std::optional<LValueSet> load(const std::filesystem::path& path, const Key& key) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::vector<unsigned char> buf((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
    if (buf.size() < 8) return std::nullopt;
    // checksum covers every byte before itself
    const std::uint64_t computed = detail::fnv1a(buf.data(), buf.size() - 8);
    detail::Reader tail(buf.data() + buf.size() - 8, 8);
    std::uint64_t stored = 0;
    tail.u64(stored);
    if (computed != stored) return std::nullopt;

    detail::Reader r(buf.data(), buf.size() - 8);
    char magic[4];
    std::uint32_t version = 0, method = 0, shift = 0, bern = 0, reserved = 0;
    std::uint64_t q = 0, X = 0, count = 0;
    if (!r.bytes(magic, 4) || std::memcmp(magic, kMagic, 4) != 0) return std::nullopt;
    if (!r.u32(version) || version != kVersion) return std::nullopt;
    if (!r.u64(q) || q != key.q) return std::nullopt;
    if (!r.u32(method) || method != (key.method == LMethod::oracle ? 0u : 1u)) return std::nullopt;
    if (!r.u32(shift) || shift != key.em_shift) return std::nullopt;
    if (!r.u32(bern) || bern != key.em_bernoulli) return std::nullopt;
    if (!r.u32(reserved)) return std::nullopt;
    if (!r.u64(X) || X != key.X) return std::nullopt;
    if (!r.u64(count) || count != key.q - 2) return std::nullopt;

    LValueSet set{key.q, key.method, key.X, std::vector<cplx>(key.q - 1, cplx{0.0, 0.0})};
    for (std::uint64_t i = 0; i < count; ++i) {
        std::uint64_t a = 0;
        double re = 0.0, im = 0.0;
        if (!r.u64(a) || !r.f64(re) || !r.f64(im)) return std::nullopt;
        if (a == 0 || a > count) return std::nullopt;
        set.vals[a] = cplx{re, im};
    }
    if (r.pos() != buf.size() - 8) return std::nullopt;
    return set;
}

} // namespace cache
} // namespace lfmom
