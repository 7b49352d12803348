#include <atomic>
#include <stdexcept>

#include "cubemax/kernels.hpp"

namespace cubemax::kernels {

namespace {

SimdMode detect_mode() {
#if defined(__x86_64__) || defined(_M_X64)
    if (__builtin_cpu_supports("avx2")) {
        return SimdMode::avx2;
    }
#endif
    return SimdMode::scalar;
}

std::atomic<SimdMode> g_mode{detect_mode()};

}  // namespace

bool avx2_supported() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2") != 0;
#else
    return false;
#endif
}

SimdMode active_mode() { return g_mode.load(std::memory_order_relaxed); }

void set_mode(SimdMode mode) {
    if (mode == SimdMode::avx2 && !avx2_supported()) {
        throw std::invalid_argument("kernels: AVX2 not supported on this CPU");
    }
    g_mode.store(mode, std::memory_order_relaxed);
}

const char* mode_name(SimdMode mode) {
    return mode == SimdMode::avx2 ? "avx2" : "scalar";
}

std::uint64_t count_off_center(const double* x, std::size_t n, double u) {
#if defined(__x86_64__) || defined(_M_X64)
    if (active_mode() == SimdMode::avx2) {
        return avx2::count_off_center(x, n, u);
    }
#endif
    return scalar::count_off_center(x, n, u);
}

std::uint64_t count_ge(const double* v, std::size_t n, double alpha) {
#if defined(__x86_64__) || defined(_M_X64)
    if (active_mode() == SimdMode::avx2) {
        return avx2::count_ge(v, n, alpha);
    }
#endif
    return scalar::count_ge(v, n, alpha);
}

void fill_uniform(std::uint64_t key, std::uint64_t pos, double* out, std::size_t n) {
#if defined(__x86_64__) || defined(_M_X64)
    if (active_mode() == SimdMode::avx2) {
        avx2::fill_uniform(key, pos, out, n);
        return;
    }
#endif
    scalar::fill_uniform(key, pos, out, n);
}

}  // namespace cubemax::kernels
