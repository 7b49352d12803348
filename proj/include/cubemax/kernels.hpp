#pragma once

// Flat-array kernels on the Monte-Carlo hot path, with a scalar reference
// implementation and an AVX2 variant selected at runtime. All kernels are
// integer-exact, so every variant returns bit-identical results.

#include <cstddef>
#include <cstdint>

namespace cubemax::kernels {

enum class SimdMode { scalar, avx2 };

bool avx2_supported();
SimdMode active_mode();
// Throws std::invalid_argument if the requested mode is not supported here.
void set_mode(SimdMode mode);
const char* mode_name(SimdMode mode);

// #{i : x[i] < u/2 or x[i] > 1 - u/2} (half-open off-center test at level u).
std::uint64_t count_off_center(const double* x, std::size_t n, double u);

// #{i : v[i] >= alpha}
std::uint64_t count_ge(const double* v, std::size_t n, double alpha);

// out[i] = uniform double at stream position pos + i (see philox.hpp).
void fill_uniform(std::uint64_t key, std::uint64_t pos, double* out, std::size_t n);

namespace scalar {
std::uint64_t count_off_center(const double* x, std::size_t n, double u);
std::uint64_t count_ge(const double* v, std::size_t n, double alpha);
void fill_uniform(std::uint64_t key, std::uint64_t pos, double* out, std::size_t n);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
std::uint64_t count_off_center(const double* x, std::size_t n, double u);
std::uint64_t count_ge(const double* v, std::size_t n, double alpha);
void fill_uniform(std::uint64_t key, std::uint64_t pos, double* out, std::size_t n);
}  // namespace avx2
#endif

}  // namespace cubemax::kernels
