#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include "cubemax/kernels.hpp"
#include "cubemax/philox.hpp"

namespace cubemax::kernels::avx2 {

std::uint64_t count_off_center(const double* x, std::size_t n, double u) {
    const double lo = 0.5 * u;
    const double hi = 1.0 - 0.5 * u;
    const __m256d vlo = _mm256_set1_pd(lo);
    const __m256d vhi = _mm256_set1_pd(hi);
    std::uint64_t k = 0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v = _mm256_loadu_pd(x + i);
        const __m256d below = _mm256_cmp_pd(v, vlo, _CMP_LT_OQ);
        const __m256d above = _mm256_cmp_pd(v, vhi, _CMP_GT_OQ);
        const int mask = _mm256_movemask_pd(_mm256_or_pd(below, above));
        k += static_cast<std::uint64_t>(__builtin_popcount(static_cast<unsigned>(mask)));
    }
    for (; i < n; ++i) {
        k += (x[i] < lo) | (x[i] > hi);
    }
    return k;
}

std::uint64_t count_ge(const double* v, std::size_t n, double alpha) {
    const __m256d va = _mm256_set1_pd(alpha);
    std::uint64_t k = 0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d x = _mm256_loadu_pd(v + i);
        const int mask = _mm256_movemask_pd(_mm256_cmp_pd(x, va, _CMP_GE_OQ));
        k += static_cast<std::uint64_t>(__builtin_popcount(static_cast<unsigned>(mask)));
    }
    for (; i < n; ++i) {
        k += (v[i] >= alpha);
    }
    return k;
}

namespace {

inline __m256i mullo32(__m256i a, __m256i b) { return _mm256_mullo_epi32(a, b); }

inline __m256i mulhi32(__m256i a, __m256i b) {
    const __m256i even = _mm256_srli_epi64(_mm256_mul_epu32(a, b), 32);
    const __m256i odd =
        _mm256_mul_epu32(_mm256_srli_epi64(a, 32), _mm256_srli_epi64(b, 32));
    const __m256i odd_hi = _mm256_and_si256(odd, _mm256_set1_epi64x(
                                                     static_cast<long long>(0xFFFFFFFF00000000ull)));
    return _mm256_or_si256(even, odd_hi);
}

}  // namespace

// Eight independent blocks per iteration, words kept in SoA form.
void fill_uniform(std::uint64_t key, std::uint64_t pos, double* out, std::size_t n) {
    std::size_t i = 0;
    if (n > 0 && (pos & 1u)) {
        out[i++] = philox_uniform_at(key, pos);
        ++pos;
    }
    std::uint64_t block = pos >> 1;

    const __m256i m0 = _mm256_set1_epi32(static_cast<int>(detail::kPhiloxM0));
    const __m256i m1 = _mm256_set1_epi32(static_cast<int>(detail::kPhiloxM1));
    const __m256i w0 = _mm256_set1_epi32(static_cast<int>(detail::kPhiloxW0));
    const __m256i w1 = _mm256_set1_epi32(static_cast<int>(detail::kPhiloxW1));
    const std::uint32_t key0 = static_cast<std::uint32_t>(key);
    const std::uint32_t key1 = static_cast<std::uint32_t>(key >> 32);

    alignas(32) std::uint32_t b0[8], b1[8], b2[8], b3[8];
    for (; i + 16 <= n; i += 16, block += 8) {
        alignas(32) std::uint32_t clo[8], chi[8];
        for (int lane = 0; lane < 8; ++lane) {
            const std::uint64_t b = block + static_cast<std::uint64_t>(lane);
            clo[lane] = static_cast<std::uint32_t>(b);
            chi[lane] = static_cast<std::uint32_t>(b >> 32);
        }
        __m256i x0 = _mm256_load_si256(reinterpret_cast<const __m256i*>(clo));
        __m256i x1 = _mm256_load_si256(reinterpret_cast<const __m256i*>(chi));
        __m256i x2 = _mm256_setzero_si256();
        __m256i x3 = _mm256_setzero_si256();
        __m256i k0 = _mm256_set1_epi32(static_cast<int>(key0));
        __m256i k1 = _mm256_set1_epi32(static_cast<int>(key1));
        for (int round = 0; round < 10; ++round) {
            const __m256i lo0 = mullo32(m0, x0);
            const __m256i hi0 = mulhi32(m0, x0);
            const __m256i lo1 = mullo32(m1, x2);
            const __m256i hi1 = mulhi32(m1, x2);
            const __m256i y0 = _mm256_xor_si256(_mm256_xor_si256(hi1, x1), k0);
            const __m256i y2 = _mm256_xor_si256(_mm256_xor_si256(hi0, x3), k1);
            x0 = y0;
            x1 = lo1;
            x2 = y2;
            x3 = lo0;
            k0 = _mm256_add_epi32(k0, w0);
            k1 = _mm256_add_epi32(k1, w1);
        }
        _mm256_store_si256(reinterpret_cast<__m256i*>(b0), x0);
        _mm256_store_si256(reinterpret_cast<__m256i*>(b1), x1);
        _mm256_store_si256(reinterpret_cast<__m256i*>(b2), x2);
        _mm256_store_si256(reinterpret_cast<__m256i*>(b3), x3);
        for (int lane = 0; lane < 8; ++lane) {
            out[i + 2 * lane] =
                u64_to_unit_double((static_cast<std::uint64_t>(b1[lane]) << 32) | b0[lane]);
            out[i + 2 * lane + 1] =
                u64_to_unit_double((static_cast<std::uint64_t>(b3[lane]) << 32) | b2[lane]);
        }
    }
    scalar::fill_uniform(key, block << 1, out + i, n - i);
}

}  // namespace cubemax::kernels::avx2

#endif  // x86_64
