#include "cubemax/kernels.hpp"

#include "cubemax/philox.hpp"

namespace cubemax::kernels::scalar {

std::uint64_t count_off_center(const double* x, std::size_t n, double u) {
    const double lo = 0.5 * u;
    const double hi = 1.0 - 0.5 * u;
    std::uint64_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        k += (x[i] < lo) | (x[i] > hi);
    }
    return k;
}

std::uint64_t count_ge(const double* v, std::size_t n, double alpha) {
    std::uint64_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        k += (v[i] >= alpha);
    }
    return k;
}

void fill_uniform(std::uint64_t key, std::uint64_t pos, double* out, std::size_t n) {
    const std::uint32_t k0 = static_cast<std::uint32_t>(key);
    const std::uint32_t k1 = static_cast<std::uint32_t>(key >> 32);
    std::size_t i = 0;
    // leading odd position
    if (n > 0 && (pos & 1u)) {
        out[i++] = philox_uniform_at(key, pos);
        ++pos;
    }
    std::uint64_t block = pos >> 1;
    for (; i + 2 <= n; i += 2, ++block) {
        const Philox4x32Block b = philox4x32_10(static_cast<std::uint32_t>(block),
                                                static_cast<std::uint32_t>(block >> 32), 0u, 0u,
                                                k0, k1);
        out[i] = u64_to_unit_double((static_cast<std::uint64_t>(b.v[1]) << 32) | b.v[0]);
        out[i + 1] = u64_to_unit_double((static_cast<std::uint64_t>(b.v[3]) << 32) | b.v[2]);
    }
    if (i < n) {
        out[i] = philox_uniform_at(key, block << 1);
    }
}

}  // namespace cubemax::kernels::scalar
