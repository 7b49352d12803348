#pragma once

// Exact evaluation of the centered maximal function of a discrete measure at
// a point. The count inside Q(x, r) is a right-continuous step function of r
// that jumps only at support distances, while the cube volume strictly grows,
// so the sup over r in (0, r_max] equals the max over those candidate radii.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cubemax/measures.hpp"

namespace cubemax {

struct EvalResult {
    double value = 0.0;                          // +inf when x carries an atom
    std::optional<double> best_radius;           // smallest maximizer
    bool truncated = false;                      // support extends beyond r_max
};

// Default truncation radius for lattice evaluation: the certifying cubes
// never need sidelength above 2*sqrt(d).
double default_lattice_rmax(int dimension);

std::vector<double> candidate_radii(const DeltaMeasure& measure, std::span<const double> x,
                                    double r_max);
std::vector<double> candidate_radii(const LatticeWindow& window, std::span<const double> x,
                                    double r_max);

EvalResult eval_max(const DeltaMeasure& measure, std::span<const double> x, double r_max);
EvalResult eval_max_lattice(std::span<const double> x, const LatticeWindow& window, double r_max);

// Independent cross-check: max of the ratio over a uniform radius grid plus
// all candidate radii, each evaluated with a fresh count_in_cube.
double eval_max_dense_oracle(const DeltaMeasure& measure, std::span<const double> x, double r_max,
                             int steps);
double eval_max_dense_oracle(const LatticeWindow& window, std::span<const double> x, double r_max,
                             int steps);

// Reusable-buffer lattice evaluator for sampling loops.
class LatticeEvaluator {
  public:
    explicit LatticeEvaluator(LatticeWindow window);

    EvalResult evaluate(std::span<const double> x, double r_max);
    const LatticeWindow& window() const { return window_; }

  private:
    struct AxisDistance {
        double r;
        std::int32_t axis;
        std::int32_t multiplicity;
    };

    LatticeWindow window_;
    std::vector<AxisDistance> distances_;
    std::vector<std::int64_t> counts_;
};

}  // namespace cubemax
