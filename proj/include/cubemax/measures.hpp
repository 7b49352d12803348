#pragma once

// Discrete measures: explicit weighted delta lists and the implicit
// integer-lattice window, plus exact mass counts inside closed l-inf cubes.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cubemax {

struct Cube {
    std::vector<double> center;
    double radius = 0.0;  // > 0
};

Cube make_cube(std::vector<double> center, double radius);

struct WeightedPoint {
    std::vector<double> x;
    double w = 1.0;
};

class DeltaMeasure {
  public:
    DeltaMeasure(int dimension, std::vector<WeightedPoint> points);

    int dimension() const { return dimension_; }
    const std::vector<WeightedPoint>& points() const { return points_; }
    double mass() const { return mass_; }

    std::string to_json() const;
    static DeltaMeasure from_json(const std::string& text);

  private:
    int dimension_;
    std::vector<WeightedPoint> points_;
    double mass_;
};

// One unit mass per integer point of [lo, hi]^d, or of all of Z^d when
// infinite. lo <= 0 <= hi so that the unit cell [0,1]^d is always covered.
struct LatticeWindow {
    int dimension = 1;
    bool infinite = true;
    std::int64_t lo = 0;
    std::int64_t hi = 0;

    std::string to_json() const;
    static LatticeWindow from_json(const std::string& text);
};

LatticeWindow make_window(int dimension, std::int64_t lo, std::int64_t hi);
LatticeWindow infinite_lattice(int dimension);

// [0, R]^d padded by ceil(sqrt(d)) per side; same lattice content as padding
// by sqrt(d) itself.
LatticeWindow margined_window(int dimension, std::int64_t R);

// #{n in Z : max(ceil(x-r), axis_lo) <= n <= min(floor(x+r), axis_hi)}.
// Endpoints within 2^-40 of an integer snap to it first, keeping
// closed-cube semantics across roundoff.
std::int64_t axis_count(double x, double r, std::optional<std::int64_t> axis_lo = std::nullopt,
                        std::optional<std::int64_t> axis_hi = std::nullopt);

double count_in_cube(const DeltaMeasure& measure, const Cube& cube);
double count_in_cube(const LatticeWindow& window, const Cube& cube);

double mass(const DeltaMeasure& measure);
double mass(const LatticeWindow& window);  // rejects the infinite marker

// Explicit DeltaMeasure with one unit point per lattice point of a bounded
// window (test/oracle helper; exponential in d).
DeltaMeasure materialize(const LatticeWindow& window);

double linf_distance(std::span<const double> a, std::span<const double> b);

}  // namespace cubemax
