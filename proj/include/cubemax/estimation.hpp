#pragma once

// Monte-Carlo estimation of superlevel measures of the lattice maximal
// function on the unit cell, with reproducible counter-based sampling.
// Results are bit-identical for fixed (seed, N) regardless of worker count:
// sample i draws its coordinates from stream positions [i*d, (i+1)*d) and the
// reduction runs over fixed-size chunks in index order.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cubemax {

struct McConfig {
    std::int64_t samples = 100000;
    std::uint64_t seed = 1;
    double r_max = 0.0;              // 0 => default_lattice_rmax(d)
    std::vector<double> alpha_grid;  // empty => default_alpha_grid(grid_t, d)
    int workers = 0;                 // 0 => hardware concurrency
    double grid_t = 2.0;             // top of default grid = e^{t^2/2}
};

struct McEstimate {
    double alpha = 0.0;
    double p_hat = 0.0;
    double std_err = 0.0;
    std::int64_t n = 0;
};

// Geometric grid from 0.5 to e^{t^2/2} (64 points) plus the MS-optimal
// threshold for this dimension.
std::vector<double> default_alpha_grid(double t, std::int64_t d);

McEstimate estimate_superlevel(std::int64_t d, double alpha, const McConfig& config);

struct BestBoundRow {
    double alpha = 0.0;
    double p_hat = 0.0;
    double std_err = 0.0;
    double value = 0.0;  // alpha * p_hat
    double ci_lo = 0.0;  // 99% band on value
    double ci_hi = 0.0;
};

struct BestBoundResult {
    std::vector<BestBoundRow> rows;  // one per grid alpha
    std::size_t best_index = 0;
    double alpha = 0.0;
    double value = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    double r_max = 0.0;
    std::int64_t n = 0;
    std::uint64_t seed = 0;
    bool all_zero = false;  // every p_hat was zero
};

BestBoundResult best_bound(std::int64_t d, const McConfig& config);

McEstimate estimate_Eu(std::int64_t d, double u, double t, const McConfig& config);

struct SweepRow {
    std::int64_t d = 0;
    double alpha = 0.0;
    double p_hat = 0.0;
    double std_err = 0.0;
    double value = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    double r_max = 0.0;
    std::int64_t n = 0;
    std::uint64_t seed = 0;
    double ms = 0.0;  // ms_bound(d)
};

std::vector<SweepRow> sweep_dimensions(const std::vector<std::int64_t>& d_list,
                                       const McConfig& config);

// 99% normal band on p, Wilson fallback when p*n < 10.
struct ConfidenceBand {
    double lo = 0.0;
    double hi = 0.0;
};
ConfidenceBand p_confidence_99(double p_hat, std::int64_t n);

}  // namespace cubemax
