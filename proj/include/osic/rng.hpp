#pragma once

// Deterministic random number generation for the Monte Carlo harness.
// xoshiro256++ with SplitMix64 state expansion — fixed, documented constants
// so runs reproduce bit-for-bit across platforms and languages (a platform
// default engine would not). Channel and noise draws are standard normals via
// Box-Muller; symbol indices take the generator's high bits.
//
// Everything here is input generation: none of it is tallied.

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "osic/constellation.hpp"
#include "osic/matrix.hpp"

namespace osic {

struct SplitMix64 {
    std::uint64_t state;

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
};

class Xoshiro256pp {
   public:
    explicit Xoshiro256pp(std::uint64_t seed) {
        SplitMix64 sm{seed};
        for (auto& w : s_) w = sm.next();
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform in (0, 1]: 53 high bits, shifted off zero so log() is safe.
    double uniform_pos() { return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; }

    // Uniform in [0, 1).
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // One standard normal pair per two uniforms (Box-Muller).
    void gaussian_pair(double& a, double& b) {
        const double r = std::sqrt(-2.0 * std::log(uniform_pos()));
        const double th = 2.0 * M_PI * uniform01();
        a = r * std::cos(th);
        b = r * std::sin(th);
    }

    // Circularly symmetric complex normal, variance `var` (per complex entry).
    cx cnormal(double var) {
        double a, b;
        gaussian_pair(a, b);
        const double sc = std::sqrt(var * 0.5);
        return cx{sc * a, sc * b};
    }

   private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t s_[4];
};

// Distinct, decorrelated stream per (seed, tag): two SplitMix64 hops keyed by
// the tag. Streams for nearby seeds or tags share no state words.
inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t tag) {
    SplitMix64 a{seed};
    const std::uint64_t s1 = a.next();
    const std::uint64_t s2 = a.next();
    SplitMix64 b{s1 ^ (tag + 0x9E3779B97F4A7C15ull)};
    return s2 ^ b.next();
}

// Stream tags keep channel, symbol, and noise draws independent per trial.
inline constexpr std::uint64_t kStreamChannel = 1;
inline constexpr std::uint64_t kStreamTransmit = 2;

// i.i.d. CN(0,1) channel matrix: entries (g1 + i g2)/sqrt(2).
inline CMatrix gen_channel(std::size_t m, std::size_t n, std::uint64_t seed) {
    Xoshiro256pp rng(derive_stream(seed, kStreamChannel));
    CMatrix h(m, n);
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < n; ++c) h(r, c) = rng.cnormal(1.0);
    return h;
}

struct Transmission {
    std::vector<std::size_t> symbol_indices;  // per transmit layer
    CVec x;                                   // sent symbols
    CVec y;                                   // received vector H x + w
};

// Draws one random transmit vector and its noisy observation. Constellation
// sizes are powers of two, so the index is the top bits of one draw.
inline Transmission gen_transmission(const CMatrix& h, const Constellation& c, double sigma2,
                                     std::uint64_t seed) {
    const std::size_t m = h.rows();
    const std::size_t n = h.cols();
    std::size_t bits = 0;
    while ((std::size_t{1} << bits) < c.points.size()) ++bits;
    if ((std::size_t{1} << bits) != c.points.size())
        throw std::invalid_argument("gen_transmission: constellation size must be a power of 2");

    Xoshiro256pp rng(derive_stream(seed, kStreamTransmit));
    Transmission t;
    t.symbol_indices.resize(n);
    t.x.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t idx = static_cast<std::size_t>(rng.next() >> (64 - bits));
        t.symbol_indices[j] = idx;
        t.x[j] = c.points[idx];
    }
    t.y.assign(m, cx{0.0, 0.0});
    for (std::size_t r = 0; r < m; ++r) {
        cx acc{0.0, 0.0};
        for (std::size_t j = 0; j < n; ++j) acc += h(r, j) * t.x[j];
        t.y[r] = acc + rng.cnormal(sigma2);
    }
    return t;
}

}  // namespace osic
