#include "cubemax/estimation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "cubemax/construction.hpp"
#include "cubemax/kernels.hpp"
#include "cubemax/maxfun.hpp"
#include "cubemax/philox.hpp"

namespace cubemax {

namespace {

constexpr std::int64_t kChunk = 4096;  // partitioning rule, independent of workers
constexpr double kZ99 = 2.5758293035489004;

// Stream tags distinguishing sampling contexts of one run seed.
constexpr std::uint64_t kTagSuperlevel = 0x73757065726c7671ull;
constexpr std::uint64_t kTagEu = 0x65755f6d656d6272ull;

std::uint64_t stream_key(std::uint64_t seed, std::uint64_t tag, std::int64_t d) {
    return derive_stream_key(derive_stream_key(seed, tag), static_cast<std::uint64_t>(d));
}

int resolve_workers(int workers) {
    if (workers > 0) {
        return workers;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

// Runs fn(chunk_index, sample_begin, sample_end) over the fixed chunk grid.
template <typename Fn>
void parallel_chunks(std::int64_t samples, int workers, Fn&& fn) {
    const std::int64_t chunks = (samples + kChunk - 1) / kChunk;
    std::atomic<std::int64_t> next{0};
    auto drain = [&]() {
        while (true) {
            const std::int64_t c = next.fetch_add(1);
            if (c >= chunks) {
                return;
            }
            const std::int64_t begin = c * kChunk;
            const std::int64_t end = std::min(samples, begin + kChunk);
            fn(c, begin, end);
        }
    };
    const int nthreads = static_cast<int>(std::min<std::int64_t>(resolve_workers(workers), chunks));
    if (nthreads <= 1) {
        drain();
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(nthreads));
    for (int i = 0; i < nthreads; ++i) {
        pool.emplace_back(drain);
    }
}

void check_mc(std::int64_t d, const McConfig& config) {
    if (d < 1) {
        throw std::invalid_argument("estimation: d must be positive");
    }
    if (config.samples < 1) {
        throw std::invalid_argument("estimation: samples must be >= 1");
    }
}

double binom_std_err(double p, std::int64_t n) {
    return std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

// All maximal-function values for the N samples, in sample order.
std::vector<double> sample_lattice_values(std::int64_t d, const McConfig& config, double r_max) {
    std::vector<double> values(static_cast<std::size_t>(config.samples));
    const std::uint64_t key = stream_key(config.seed, kTagSuperlevel, d);
    parallel_chunks(config.samples, config.workers, [&](std::int64_t, std::int64_t begin,
                                                        std::int64_t end) {
        LatticeEvaluator eval(infinite_lattice(static_cast<int>(d)));
        std::vector<double> x(static_cast<std::size_t>(d));
        for (std::int64_t i = begin; i < end; ++i) {
            kernels::fill_uniform(key, static_cast<std::uint64_t>(i * d), x.data(), x.size());
            values[static_cast<std::size_t>(i)] = eval.evaluate(x, r_max).value;
        }
    });
    return values;
}

}  // namespace

std::vector<double> default_alpha_grid(double t, std::int64_t d) {
    const double lo = 0.5;
    const double hi = std::exp(0.5 * t * t);
    std::vector<double> grid;
    grid.reserve(65);
    const double ratio = std::pow(hi / lo, 1.0 / 63.0);
    double a = lo;
    for (int i = 0; i < 64; ++i) {
        grid.push_back(a);
        a *= ratio;
    }
    grid.push_back(ms_bound(d));
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

ConfidenceBand p_confidence_99(double p_hat, std::int64_t n) {
    const double nn = static_cast<double>(n);
    if (p_hat * nn < 10.0) {
        // Wilson score interval
        const double z2 = kZ99 * kZ99;
        const double denom = 1.0 + z2 / nn;
        const double center = (p_hat + z2 / (2.0 * nn)) / denom;
        const double half =
            kZ99 * std::sqrt(p_hat * (1.0 - p_hat) / nn + z2 / (4.0 * nn * nn)) / denom;
        return ConfidenceBand{std::max(0.0, center - half), std::min(1.0, center + half)};
    }
    const double half = kZ99 * binom_std_err(p_hat, n);
    return ConfidenceBand{std::max(0.0, p_hat - half), std::min(1.0, p_hat + half)};
}

McEstimate estimate_superlevel(std::int64_t d, double alpha, const McConfig& config) {
    check_mc(d, config);
    if (!(alpha > 0.0)) {
        throw std::invalid_argument("estimate_superlevel: alpha must be positive");
    }
    const double r_max = config.r_max > 0.0 ? config.r_max : default_lattice_rmax(static_cast<int>(d));
    const std::uint64_t key = stream_key(config.seed, kTagSuperlevel, d);
    const std::int64_t chunks = (config.samples + kChunk - 1) / kChunk;
    std::vector<std::int64_t> hits(static_cast<std::size_t>(chunks), 0);
    parallel_chunks(config.samples, config.workers,
                    [&](std::int64_t c, std::int64_t begin, std::int64_t end) {
                        LatticeEvaluator eval(infinite_lattice(static_cast<int>(d)));
                        std::vector<double> x(static_cast<std::size_t>(d));
                        std::int64_t h = 0;
                        for (std::int64_t i = begin; i < end; ++i) {
                            kernels::fill_uniform(key, static_cast<std::uint64_t>(i * d), x.data(),
                                                  x.size());
                            h += eval.evaluate(x, r_max).value >= alpha;
                        }
                        hits[static_cast<std::size_t>(c)] = h;
                    });
    std::int64_t total = 0;
    for (std::int64_t h : hits) {
        total += h;
    }
    McEstimate est;
    est.alpha = alpha;
    est.n = config.samples;
    est.p_hat = static_cast<double>(total) / static_cast<double>(config.samples);
    est.std_err = binom_std_err(est.p_hat, config.samples);
    return est;
}

BestBoundResult best_bound(std::int64_t d, const McConfig& config) {
    check_mc(d, config);
    const double r_max = config.r_max > 0.0 ? config.r_max : default_lattice_rmax(static_cast<int>(d));
    std::vector<double> grid =
        config.alpha_grid.empty() ? default_alpha_grid(config.grid_t, d) : config.alpha_grid;
    if (grid.empty()) {
        throw std::invalid_argument("best_bound: alpha grid must be nonempty");
    }
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        if (!(grid[i] < grid[i + 1])) {
            throw std::invalid_argument("best_bound: alpha grid must be strictly increasing");
        }
    }

    const std::vector<double> values = sample_lattice_values(d, config, r_max);

    BestBoundResult out;
    out.r_max = r_max;
    out.n = config.samples;
    out.seed = config.seed;
    out.rows.reserve(grid.size());
    for (double alpha : grid) {
        const std::uint64_t hits = kernels::count_ge(values.data(), values.size(), alpha);
        BestBoundRow row;
        row.alpha = alpha;
        row.p_hat = static_cast<double>(hits) / static_cast<double>(config.samples);
        row.std_err = binom_std_err(row.p_hat, config.samples);
        row.value = alpha * row.p_hat;
        const ConfidenceBand band = p_confidence_99(row.p_hat, config.samples);
        row.ci_lo = alpha * band.lo;
        row.ci_hi = alpha * band.hi;
        out.rows.push_back(row);
    }
    out.best_index = 0;
    for (std::size_t i = 1; i < out.rows.size(); ++i) {
        if (out.rows[i].value > out.rows[out.best_index].value) {
            out.best_index = i;
        }
    }
    const BestBoundRow& best = out.rows[out.best_index];
    out.alpha = best.alpha;
    out.value = best.value;
    out.ci_lo = best.ci_lo;
    out.ci_hi = best.ci_hi;
    out.all_zero = best.value == 0.0;
    return out;
}

McEstimate estimate_Eu(std::int64_t d, double u, double t, const McConfig& config) {
    check_mc(d, config);
    const LevelProfile profile = make_profile(u, t, d);
    const std::uint64_t key = stream_key(config.seed, kTagEu, d);
    const std::int64_t chunks = (config.samples + kChunk - 1) / kChunk;
    std::vector<std::int64_t> hits(static_cast<std::size_t>(chunks), 0);
    parallel_chunks(config.samples, config.workers,
                    [&](std::int64_t c, std::int64_t begin, std::int64_t end) {
                        std::vector<double> x(static_cast<std::size_t>(d));
                        std::int64_t h = 0;
                        for (std::int64_t i = begin; i < end; ++i) {
                            kernels::fill_uniform(key, static_cast<std::uint64_t>(i * d), x.data(),
                                                  x.size());
                            const auto k = static_cast<std::int64_t>(
                                kernels::count_off_center(x.data(), x.size(), u));
                            h += in_Eu_count(k, profile);
                        }
                        hits[static_cast<std::size_t>(c)] = h;
                    });
    std::int64_t total = 0;
    for (std::int64_t h : hits) {
        total += h;
    }
    McEstimate est;
    est.alpha = 0.0;
    est.n = config.samples;
    est.p_hat = static_cast<double>(total) / static_cast<double>(config.samples);
    est.std_err = binom_std_err(est.p_hat, config.samples);
    return est;
}

std::vector<SweepRow> sweep_dimensions(const std::vector<std::int64_t>& d_list,
                                       const McConfig& config) {
    if (d_list.empty()) {
        throw std::invalid_argument("sweep_dimensions: d list must be nonempty");
    }
    std::vector<SweepRow> rows;
    rows.reserve(d_list.size());
    for (std::int64_t d : d_list) {
        const BestBoundResult r = best_bound(d, config);
        SweepRow row;
        row.d = d;
        row.alpha = r.alpha;
        row.p_hat = r.rows[r.best_index].p_hat;
        row.std_err = r.rows[r.best_index].std_err;
        row.value = r.value;
        row.ci_lo = r.ci_lo;
        row.ci_hi = r.ci_hi;
        row.r_max = r.r_max;
        row.n = r.n;
        row.seed = r.seed;
        row.ms = ms_bound(d);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace cubemax
