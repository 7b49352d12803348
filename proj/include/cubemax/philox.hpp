#pragma once

// Counter-based RNG (Philox4x32-10, Salmon et al., SC'11). Sample i of a
// stream depends only on (key, i), never on call order, so parallel
// partitions of an index range reproduce the serial sequence exactly.

#include <array>
#include <cstdint>

namespace cubemax {

namespace detail {
inline constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
inline constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
inline constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
inline constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;
}  // namespace detail

struct Philox4x32Block {
    std::uint32_t v[4];
};

inline Philox4x32Block philox4x32_10(std::uint32_t c0, std::uint32_t c1, std::uint32_t c2,
                                     std::uint32_t c3, std::uint32_t k0, std::uint32_t k1) {
    using namespace detail;
    std::uint32_t x0 = c0, x1 = c1, x2 = c2, x3 = c3;
    for (int round = 0; round < 10; ++round) {
        const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * x0;
        const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * x2;
        const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
        const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
        const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
        const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
        const std::uint32_t y0 = hi1 ^ x1 ^ k0;
        const std::uint32_t y1 = lo1;
        const std::uint32_t y2 = hi0 ^ x3 ^ k1;
        const std::uint32_t y3 = lo0;
        x0 = y0;
        x1 = y1;
        x2 = y2;
        x3 = y3;
        k0 += kPhiloxW0;
        k1 += kPhiloxW1;
    }
    return Philox4x32Block{{x0, x1, x2, x3}};
}

inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// hash(seed, stream): the per-stream Philox key.
inline std::uint64_t derive_stream_key(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(splitmix64(seed) + stream);
}

// 53-bit uniform in [0, 1) from one 64-bit word.
inline double u64_to_unit_double(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Uniform double at absolute position `pos` of the stream with key `key`.
// Block b = pos/2 carries doubles (v1:v0) and (v3:v2).
inline double philox_uniform_at(std::uint64_t key, std::uint64_t pos) {
    const std::uint64_t block = pos >> 1;
    const Philox4x32Block out =
        philox4x32_10(static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32),
                      0u, 0u, static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32));
    const unsigned slot = static_cast<unsigned>(pos & 1u);
    const std::uint64_t bits =
        (static_cast<std::uint64_t>(out.v[2 * slot + 1]) << 32) | out.v[2 * slot];
    return u64_to_unit_double(bits);
}

}  // namespace cubemax
