#include <cstdint>
#include <random>
#include <vector>

#include "cubemax/kernels.hpp"
#include "cubemax/philox.hpp"
#include "doctest.h"

using namespace cubemax;

TEST_CASE("philox4x32-10 known-answer vectors") {
    // Random123 kat_vectors, philox4x32 10 rounds
    {
        const auto b = philox4x32_10(0u, 0u, 0u, 0u, 0u, 0u);
        CHECK(b.v[0] == 0x6627e8d5u);
        CHECK(b.v[1] == 0xe169c58du);
        CHECK(b.v[2] == 0xbc57ac4cu);
        CHECK(b.v[3] == 0x9b00dbd8u);
    }
    {
        const auto b = philox4x32_10(0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu,
                                     0xffffffffu, 0xffffffffu);
        CHECK(b.v[0] == 0x408f276du);
        CHECK(b.v[1] == 0x41c83b0eu);
        CHECK(b.v[2] == 0xa20bc7c6u);
        CHECK(b.v[3] == 0x6d5451fdu);
    }
    {
        const auto b = philox4x32_10(0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u,
                                     0xa4093822u, 0x299f31d0u);
        CHECK(b.v[0] == 0xd16cfe09u);
        CHECK(b.v[1] == 0x94fdccebu);
        CHECK(b.v[2] == 0x5001e420u);
        CHECK(b.v[3] == 0x24126ea1u);
    }
}

TEST_CASE("uniforms lie in [0,1) and depend only on (key, position)") {
    const std::uint64_t key = derive_stream_key(42, 7);
    std::vector<double> a(1000), b(1000);
    kernels::scalar::fill_uniform(key, 0, a.data(), a.size());
    for (double v : a) {
        CHECK(v >= 0.0);
        CHECK(v < 1.0);
    }
    // offset fill reproduces the same positions
    kernels::scalar::fill_uniform(key, 500, b.data(), 500);
    for (int i = 0; i < 500; ++i) {
        CHECK(b[i] == a[500 + i]);
    }
    for (int i = 0; i < 1000; ++i) {
        CHECK(a[i] == philox_uniform_at(key, static_cast<std::uint64_t>(i)));
    }
}

TEST_CASE("scalar and avx2 kernels are bit-identical") {
    if (!kernels::avx2_supported()) {
        return;
    }
    std::mt19937_64 rng(123);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (std::size_t n : {0ul, 1ul, 3ul, 4ul, 5ul, 17ul, 64ul, 1001ul}) {
        std::vector<double> x(n);
        for (auto& v : x) {
            v = unif(rng);
        }
        for (double u : {0.125, 0.25, 0.7}) {
            CHECK(kernels::scalar::count_off_center(x.data(), n, u) ==
                  kernels::avx2::count_off_center(x.data(), n, u));
        }
        for (double alpha : {0.1, 0.5, 0.99}) {
            CHECK(kernels::scalar::count_ge(x.data(), n, alpha) ==
                  kernels::avx2::count_ge(x.data(), n, alpha));
        }
        for (std::uint64_t pos : {0ull, 1ull, 7ull, 12345ull}) {
            std::vector<double> s(n), v(n);
            kernels::scalar::fill_uniform(99, pos, s.data(), n);
            kernels::avx2::fill_uniform(99, pos, v.data(), n);
            CHECK(s == v);
        }
    }
}

TEST_CASE("count kernels match a straightforward recount on boundary values") {
    // exact boundary: u/2 itself is centered, 1 - u/2 itself is centered
    const double u = 0.25;
    std::vector<double> x = {0.0, 0.125, 0.1249, 0.875, 0.8751, 1.0, 0.5};
    // off-center: 0.0, 0.1249, 0.8751, 1.0
    CHECK(kernels::count_off_center(x.data(), x.size(), u) == 4);
    std::vector<double> v = {1.0, 2.0, 2.0, 0.5};
    CHECK(kernels::count_ge(v.data(), v.size(), 2.0) == 2);
}

TEST_CASE("mode switching") {
    const auto saved = kernels::active_mode();
    kernels::set_mode(kernels::SimdMode::scalar);
    CHECK(kernels::active_mode() == kernels::SimdMode::scalar);
    if (kernels::avx2_supported()) {
        kernels::set_mode(kernels::SimdMode::avx2);
        CHECK(kernels::active_mode() == kernels::SimdMode::avx2);
    }
    kernels::set_mode(saved);
}
