#include <stdexcept>
#include <cmath>
#include <random>
#include <vector>

#include "cubemax/measures.hpp"
#include "doctest.h"

using namespace cubemax;

TEST_CASE("axis_count basics") {
    CHECK(axis_count(0.5, 0.5) == 2);                     // {0, 1}
    CHECK(axis_count(0.5, 0.875) == 2);                   // centered at u=1/4, s=1: 2s
    CHECK(axis_count(0.95, 0.875) == 1);                  // off-center: 2s-1
    CHECK(axis_count(0.3, 1.5) == 3);                     // {-1, 0, 1}
    CHECK(axis_count(-5.0, 1.0, std::int64_t{0}, std::int64_t{3}) == 0);
    CHECK(axis_count(0.0, 2.5, std::int64_t{0}, std::int64_t{3}) == 3);  // {0,1,2}
}

TEST_CASE("axis_count snaps near-integer endpoints") {
    // x + r lands a hair under 2: closed-cube semantics keep the point
    const double x = 1.0 + 0x1.0p-42;
    CHECK(axis_count(x, 1.0) == 3);  // {0, 1, 2}
    CHECK(axis_count(0.5, 0.5 - 0x1.0p-44) == 2);
}

TEST_CASE("count_in_cube on delta measures counts closed-cube boundary") {
    const DeltaMeasure m(1, {{{0.0}, 1.0}, {{1.0}, 1.0}});
    CHECK(count_in_cube(m, make_cube({0.5}, 0.5)) == 2.0);
    CHECK(count_in_cube(m, make_cube({0.5}, 0.49)) == 0.0);
    CHECK_THROWS_AS(count_in_cube(m, make_cube({0.5, 0.5}, 0.5)), std::invalid_argument);
}

TEST_CASE("count_in_cube on lattice windows") {
    CHECK(count_in_cube(infinite_lattice(2), make_cube({0.5, 0.5}, 0.875)) == 4.0);
    CHECK(count_in_cube(make_window(1, 0, 3), make_cube({-5.0}, 1.0)) == 0.0);
    CHECK(count_in_cube(make_window(2, -1, 1), make_cube({0.0, 0.0}, 10.0)) == 9.0);
}

TEST_CASE("mass") {
    CHECK(mass(make_window(3, 0, 1)) == 8.0);
    CHECK(mass(make_window(2, -4, 14)) == 361.0);
    const DeltaMeasure m(2, {{{0.0, 0.0}, 1.0}, {{1.0, 0.0}, 1.0}, {{0.0, 1.0}, 1.0}});
    CHECK(mass(m) == 3.0);
    CHECK_THROWS_AS(mass(infinite_lattice(2)), std::invalid_argument);
}

TEST_CASE("paper window matches integer-margin bounds") {
    const LatticeWindow w = margined_window(2, 10);
    CHECK(w.lo == -2);
    CHECK(w.hi == 12);
    CHECK(mass(w) == 225.0);
}

TEST_CASE("lattice product identity vs brute-force enumeration") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> center(-4.0, 4.0);
    std::uniform_real_distribution<double> radius(0.05, 6.0);
    for (int d = 1; d <= 3; ++d) {
        const LatticeWindow w = make_window(d, -5, 5);
        const DeltaMeasure mat = materialize(w);
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<double> c(static_cast<std::size_t>(d));
            for (auto& v : c) {
                v = center(rng);
            }
            const Cube q = make_cube(c, radius(rng));
            CHECK(count_in_cube(w, q) == count_in_cube(mat, q));
        }
    }
}

TEST_CASE("translation invariance of the unbounded lattice") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const LatticeWindow w = infinite_lattice(3);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<double> c = {unif(rng), unif(rng), unif(rng)};
        std::vector<double> shifted = {c[0] + 7.0, c[1] - 3.0, c[2] + 1.0};
        const double r = 0.1 + 3.0 * unif(rng);
        CHECK(count_in_cube(w, make_cube(c, r)) == count_in_cube(w, make_cube(shifted, r)));
    }
}

TEST_CASE("count is nondecreasing in the radius") {
    const LatticeWindow w = infinite_lattice(2);
    std::vector<double> c = {0.3, 0.77};
    double prev = 0.0;
    for (double r = 0.05; r < 4.0; r += 0.07) {
        const double cur = count_in_cube(w, make_cube(c, r));
        CHECK(cur >= prev);
        prev = cur;
    }
}

TEST_CASE("measure JSON round-trip") {
    const DeltaMeasure m(2, {{{0.25, -1.5}, 2.0}, {{0.0, 0.0}, 1.0}});
    const DeltaMeasure back = DeltaMeasure::from_json(m.to_json());
    CHECK(back.dimension() == 2);
    REQUIRE(back.points().size() == 2);
    CHECK(back.points()[0].x[1] == -1.5);
    CHECK(back.points()[0].w == 2.0);

    const LatticeWindow w = make_window(3, -2, 5);
    const LatticeWindow wb = LatticeWindow::from_json(w.to_json());
    CHECK(wb.lo == -2);
    CHECK(wb.hi == 5);
    CHECK_FALSE(wb.infinite);
    const LatticeWindow inf = LatticeWindow::from_json(infinite_lattice(4).to_json());
    CHECK(inf.infinite);
    CHECK(inf.dimension == 4);
}

TEST_CASE("invalid constructions are rejected") {
    CHECK_THROWS_AS(DeltaMeasure(2, {{{0.0}, 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(DeltaMeasure(1, {{{0.0}, 0.0}}), std::invalid_argument);
    CHECK_THROWS_AS(make_window(2, 1, 3), std::invalid_argument);
    CHECK_THROWS_AS(make_cube({0.0}, 0.0), std::invalid_argument);
}
