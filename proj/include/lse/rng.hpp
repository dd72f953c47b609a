#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "lse/lattice.hpp"

namespace lse {

// Philox4x32-10 counter-based generator. Output is a pure function of
// (key, counter), so draws can be indexed by (seed, t, site, draw) and are
// independent of thread scheduling and evaluation order.
namespace philox {

struct Block {
    std::uint32_t v[4];
};

inline void round10(std::uint32_t k0, std::uint32_t k1, Block& ctr) {
    constexpr std::uint32_t M0 = 0xD2511F53u, M1 = 0xCD9E8D57u;
    constexpr std::uint32_t W0 = 0x9E3779B9u, W1 = 0xBB67AE85u;
    std::uint32_t x0 = ctr.v[0], x1 = ctr.v[1], x2 = ctr.v[2], x3 = ctr.v[3];
    for (int r = 0; r < 10; ++r) {
        const std::uint64_t p0 = static_cast<std::uint64_t>(M0) * x0;
        const std::uint64_t p1 = static_cast<std::uint64_t>(M1) * x2;
        const std::uint32_t lo0 = static_cast<std::uint32_t>(p0), hi0 = static_cast<std::uint32_t>(p0 >> 32);
        const std::uint32_t lo1 = static_cast<std::uint32_t>(p1), hi1 = static_cast<std::uint32_t>(p1 >> 32);
        const std::uint32_t y0 = hi1 ^ x1 ^ k0;
        const std::uint32_t y1 = lo1;
        const std::uint32_t y2 = hi0 ^ x3 ^ k1;
        const std::uint32_t y3 = lo0;
        x0 = y0; x1 = y1; x2 = y2; x3 = y3;
        k0 += W0; k1 += W1;
    }
    ctr.v[0] = x0; ctr.v[1] = x1; ctr.v[2] = x2; ctr.v[3] = x3;
}

inline Block block(std::uint64_t key, std::uint64_t c_lo, std::uint64_t c_hi) {
    Block b{{static_cast<std::uint32_t>(c_lo), static_cast<std::uint32_t>(c_lo >> 32),
             static_cast<std::uint32_t>(c_hi), static_cast<std::uint32_t>(c_hi >> 32)}};
    round10(static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32), b);
    return b;
}

}  // namespace philox

inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Replicate r of a master seed gets its own 64-bit stream key.
inline std::uint64_t split_seed(std::uint64_t master, std::uint64_t replicate) {
    return mix64(master ^ mix64(replicate));
}

// Packs site coordinates injectively into 63 bits; bit budget per coordinate
// is 63/dim. Throws when a coordinate leaves the packable range.
inline std::uint64_t pack_site(const Site& s) {
    const int bits = 63 / s.dim;
    const std::int64_t lim = std::int64_t{1} << (bits - 1);
    std::uint64_t key = 0;
    for (int i = 0; i < s.dim; ++i) {
        const std::int64_t c = s.c[i];
        if (c < -lim || c >= lim) throw std::runtime_error("pack_site: coordinate out of range");
        key = (key << bits) | static_cast<std::uint64_t>(c + lim);
    }
    return key;
}

// Sequential uniform/normal draws for one (seed, t, site) cell.
class SiteRandom {
  public:
    SiteRandom(std::uint64_t seed, std::int64_t t, const Site& site)
        : key_(seed), c_lo_(pack_site(site)), c_hi_(static_cast<std::uint64_t>(t) << 20) {}

    std::uint32_t next_u32() {
        if (pos_ == 4) {
            blk_ = philox::block(key_, c_lo_, c_hi_ | block_idx_++);
            pos_ = 0;
        }
        return blk_.v[pos_++];
    }

    // Uniform in [0,1) with 53 random bits.
    double next_uniform() {
        const std::uint64_t hi = next_u32(), lo = next_u32();
        return static_cast<double>(((hi << 32) | lo) >> 11) * 0x1.0p-53;
    }

    bool next_bernoulli(double p) { return next_uniform() < p; }

    // floor(u*n), clamped.
    int next_index(int n) {
        int k = static_cast<int>(next_uniform() * n);
        return k >= n ? n - 1 : k;
    }

    double next_normal() {
        const double u1 = (static_cast<double>(((static_cast<std::uint64_t>(next_u32()) << 32) |
                                                next_u32()) >> 11) + 1.0) * 0x1.0p-53;
        const double u2 = next_uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
    }

  private:
    std::uint64_t key_;
    std::uint64_t c_lo_;
    std::uint64_t c_hi_;
    std::uint64_t block_idx_ = 0;
    philox::Block blk_{};
    int pos_ = 4;
};

// Plain counter stream for non-lattice Monte Carlo (pair-walk episodes).
class CounterStream {
  public:
    CounterStream(std::uint64_t seed, std::uint64_t stream) : key_(mix64(seed ^ mix64(stream))) {}

    std::uint32_t next_u32() {
        if (pos_ == 4) {
            blk_ = philox::block(key_, ctr_++, 0);
            pos_ = 0;
        }
        return blk_.v[pos_++];
    }
    double next_uniform() {
        const std::uint64_t hi = next_u32(), lo = next_u32();
        return static_cast<double>(((hi << 32) | lo) >> 11) * 0x1.0p-53;
    }

  private:
    std::uint64_t key_;
    std::uint64_t ctr_ = 0;
    philox::Block blk_{};
    int pos_ = 4;
};

}  // namespace lse
