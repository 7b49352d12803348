#pragma once

// Exact 1-D weak-type functional for finite unit-mass delta configurations
// and a derivative-free position optimizer.
//
// {M >= lambda} is exactly the union over index pairs i <= j of
// [p_j - m/(2 lambda), p_i + m/(2 lambda)], m = j - i + 1: the smallest cube
// centered at x containing p_i..p_j has radius max(x - p_i, p_j - x), and the
// ratio is >= lambda exactly on that interval.

#include <cstdint>
#include <string>
#include <vector>

namespace cubemax {

struct OneDConfig {
    std::vector<double> positions;  // strictly increasing, unit weights
    std::string provenance;

    std::string to_json() const;
    static OneDConfig from_json(const std::string& text);
};

OneDConfig make_oned_config(std::vector<double> positions, std::string provenance = "");

struct Interval1D {
    double lo = 0.0;
    double hi = 0.0;
};

struct IntervalUnion {
    std::vector<Interval1D> intervals;  // disjoint, sorted
    double total_length = 0.0;
};

IntervalUnion superlevel_1d(const OneDConfig& config, double lambda);

// lambda * |{M >= lambda}| / n, a valid lower bound for c_1.
double functional_1d(const OneDConfig& config, double lambda);

struct BestLambda {
    double lambda = 1.0;
    double value = 0.0;
};

// Coarse scan over breakpoint candidates from the pair geometry plus
// golden-section refinement; a valid lower bound regardless of optimality.
BestLambda best_lambda(const OneDConfig& config, int refinement_budget = 24);

struct OptimizeTraceRow {
    std::int64_t iteration = 0;
    double value = 0.0;
    double step = 0.0;
};

struct OptimizeResult {
    OneDConfig config;
    double value = 0.0;
    double lambda = 1.0;
    std::vector<OptimizeTraceRow> trace;
};

// Multi-start coordinate descent with geometrically shrinking step; the
// best-so-far value is nondecreasing along each restart's trace.
OptimizeResult optimize_positions(int n, std::int64_t iterations = 400, int restarts = 20,
                                  std::uint64_t seed = 1, int workers = 0);

}  // namespace cubemax
