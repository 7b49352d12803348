#include "cubemax/oned.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "cubemax/kernels.hpp"
#include "cubemax/philox.hpp"
#include "json.hpp"

namespace cubemax {

namespace {

constexpr double kMergeTol = 1e-12;

void check_positions(const std::vector<double>& p) {
    if (p.empty()) {
        throw std::invalid_argument("OneDConfig: needs at least one delta");
    }
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        if (!(p[i] < p[i + 1])) {
            throw std::invalid_argument("OneDConfig: positions must be strictly increasing");
        }
    }
    for (double x : p) {
        if (!std::isfinite(x)) {
            throw std::invalid_argument("OneDConfig: positions must be finite");
        }
    }
}

// Superlevel length with caller-owned scratch; positions strictly increasing.
double superlevel_length(const std::vector<double>& p, double lambda,
                         std::vector<Interval1D>& scratch) {
    const std::size_t n = p.size();
    scratch.clear();
    const double inv = 1.0 / (2.0 * lambda);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            const double reach = static_cast<double>(j - i + 1) * inv;
            const double lo = p[j] - reach;
            const double hi = p[i] + reach;
            if (lo <= hi) {
                scratch.push_back(Interval1D{lo, hi});
            }
        }
    }
    std::sort(scratch.begin(), scratch.end(),
              [](const Interval1D& a, const Interval1D& b) { return a.lo < b.lo; });
    double total = 0.0;
    double cl = scratch.front().lo;
    double ch = scratch.front().hi;
    for (std::size_t i = 1; i < scratch.size(); ++i) {
        if (scratch[i].lo <= ch + kMergeTol) {
            ch = std::max(ch, scratch[i].hi);
        } else {
            total += ch - cl;
            cl = scratch[i].lo;
            ch = scratch[i].hi;
        }
    }
    total += ch - cl;
    return total;
}

double functional_raw(const std::vector<double>& p, double lambda,
                      std::vector<Interval1D>& scratch) {
    return lambda * superlevel_length(p, lambda, scratch) / static_cast<double>(p.size());
}

// Breakpoint candidates: appearance thresholds m/(p_j - p_i) for every pair,
// and the merge family M/(2 gap) over consecutive gaps.
void collect_candidates(const std::vector<double>& p, std::vector<double>& out) {
    const std::size_t n = p.size();
    out.clear();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = p[j] - p[i];
            if (d > 0.0) {
                out.push_back(static_cast<double>(j - i + 1) / d);
            }
        }
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double g = p[i + 1] - p[i];
        if (g > 0.0) {
            for (std::size_t M = 1; M <= 2 * n; ++M) {
                out.push_back(static_cast<double>(M) / (2.0 * g));
            }
        }
    }
    if (n == 1) {
        out.push_back(1.0);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
}

struct BestLambdaState {
    std::vector<Interval1D> scratch;
    std::vector<double> candidates;
};

BestLambda best_lambda_impl(const std::vector<double>& p, int refinement_budget,
                            BestLambdaState& state) {
    collect_candidates(p, state.candidates);
    BestLambda best;
    best.lambda = state.candidates.empty() ? 1.0 : state.candidates.front();
    best.value = 0.0;
    std::size_t best_idx = 0;
    for (std::size_t i = 0; i < state.candidates.size(); ++i) {
        const double v = functional_raw(p, state.candidates[i], state.scratch);
        if (v > best.value) {
            best.value = v;
            best.lambda = state.candidates[i];
            best_idx = i;
        }
    }
    // golden-section refinement on the bracket around the best candidate
    double a = best_idx > 0 ? state.candidates[best_idx - 1] : best.lambda * 0.5;
    double b = best_idx + 1 < state.candidates.size() ? state.candidates[best_idx + 1]
                                                      : best.lambda * 2.0;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - gr * (b - a);
    double d = a + gr * (b - a);
    double fc = functional_raw(p, c, state.scratch);
    double fd = functional_raw(p, d, state.scratch);
    const int iters = std::clamp(refinement_budget, 1, 80);
    for (int it = 0; it < iters; ++it) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = functional_raw(p, c, state.scratch);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = functional_raw(p, d, state.scratch);
        }
        const double v = std::max(fc, fd);
        const double l = fc > fd ? c : d;
        if (v > best.value) {
            best.value = v;
            best.lambda = l;
        }
    }
    return best;
}

}  // namespace

OneDConfig make_oned_config(std::vector<double> positions, std::string provenance) {
    check_positions(positions);
    return OneDConfig{std::move(positions), std::move(provenance)};
}

IntervalUnion superlevel_1d(const OneDConfig& config, double lambda) {
    if (!(lambda > 0.0)) {
        throw std::invalid_argument("superlevel_1d: lambda must be positive");
    }
    check_positions(config.positions);
    const auto& p = config.positions;
    const std::size_t n = p.size();
    std::vector<Interval1D> raw;
    const double inv = 1.0 / (2.0 * lambda);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            const double reach = static_cast<double>(j - i + 1) * inv;
            const double lo = p[j] - reach;
            const double hi = p[i] + reach;
            if (lo <= hi) {
                raw.push_back(Interval1D{lo, hi});
            }
        }
    }
    std::sort(raw.begin(), raw.end(),
              [](const Interval1D& a, const Interval1D& b) { return a.lo < b.lo; });
    IntervalUnion out;
    double cl = raw.front().lo;
    double ch = raw.front().hi;
    for (std::size_t i = 1; i < raw.size(); ++i) {
        if (raw[i].lo <= ch + kMergeTol) {
            ch = std::max(ch, raw[i].hi);
        } else {
            out.intervals.push_back(Interval1D{cl, ch});
            out.total_length += ch - cl;
            cl = raw[i].lo;
            ch = raw[i].hi;
        }
    }
    out.intervals.push_back(Interval1D{cl, ch});
    out.total_length += ch - cl;
    return out;
}

double functional_1d(const OneDConfig& config, double lambda) {
    return lambda * superlevel_1d(config, lambda).total_length /
           static_cast<double>(config.positions.size());
}

BestLambda best_lambda(const OneDConfig& config, int refinement_budget) {
    if (refinement_budget < 1) {
        throw std::invalid_argument("best_lambda: budget must be >= 1");
    }
    check_positions(config.positions);
    BestLambdaState state;
    return best_lambda_impl(config.positions, refinement_budget, state);
}

namespace {

struct RestartOutcome {
    double value = 0.0;
    double lambda = 1.0;
    std::vector<double> positions;
    std::vector<OptimizeTraceRow> trace;
};

RestartOutcome run_restart(int n, std::int64_t iterations, std::uint64_t seed, int restart) {
    const std::uint64_t key =
        derive_stream_key(seed, 0x0d1u ^ (static_cast<std::uint64_t>(restart) << 8));
    std::vector<double> p(static_cast<std::size_t>(n));
    // restart 0: the integer lattice; restart 1: tight pairs; otherwise
    // jittered lattice or fully random, alternating
    if (restart == 0) {
        for (int i = 0; i < n; ++i) {
            p[static_cast<std::size_t>(i)] = static_cast<double>(i);
        }
    } else if (restart == 1) {
        for (int i = 0; i < n; ++i) {
            p[static_cast<std::size_t>(i)] =
                static_cast<double>(i / 2) * 2.0 + 0.05 * static_cast<double>(i % 2);
        }
    } else if (restart % 2 == 0) {
        for (int i = 0; i < n; ++i) {
            const double u = philox_uniform_at(key, static_cast<std::uint64_t>(i));
            p[static_cast<std::size_t>(i)] = static_cast<double>(i) + 0.9 * (u - 0.5);
        }
    } else {
        for (int i = 0; i < n; ++i) {
            p[static_cast<std::size_t>(i)] =
                static_cast<double>(n) * philox_uniform_at(key, static_cast<std::uint64_t>(i));
        }
    }
    std::sort(p.begin(), p.end());
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        if (p[i + 1] - p[i] < 1e-9) {
            p[i + 1] = p[i] + 1e-9;
        }
    }

    BestLambdaState state;
    RestartOutcome out;
    {
        const BestLambda b = best_lambda_impl(p, 24, state);
        out.value = b.value;
        out.lambda = b.lambda;
        out.positions = p;
    }
    const double span0 = std::max(p.back() - p.front(), 1e-6);
    double step = span0 / static_cast<double>(n);
    std::int64_t non_improving = 0;
    std::vector<double> q;
    out.trace.push_back(OptimizeTraceRow{0, out.value, step});
    for (std::int64_t it = 1; it <= iterations; ++it) {
        const std::size_t coord = static_cast<std::size_t>((it - 1) % n);
        bool improved = false;
        for (int sign = 0; sign < 2; ++sign) {
            q = out.positions;
            q[coord] += (sign == 0 ? step : -step);
            std::sort(q.begin(), q.end());
            bool distinct = true;
            for (std::size_t i = 0; i + 1 < q.size(); ++i) {
                if (q[i + 1] - q[i] < 1e-9) {
                    distinct = false;
                    break;
                }
            }
            if (!distinct) {
                continue;
            }
            const BestLambda b = best_lambda_impl(q, 24, state);
            if (b.value > out.value + 1e-13) {
                out.value = b.value;
                out.lambda = b.lambda;
                out.positions = q;
                improved = true;
            }
        }
        if (improved) {
            non_improving = 0;
            out.trace.push_back(OptimizeTraceRow{it, out.value, step});
        } else {
            ++non_improving;
            if (non_improving % 50 == 0) {
                step *= 0.5;
                out.trace.push_back(OptimizeTraceRow{it, out.value, step});
                if (step < 1e-10 * span0) {
                    break;
                }
            }
        }
    }
    out.trace.push_back(OptimizeTraceRow{iterations, out.value, step});
    return out;
}

}  // namespace

OptimizeResult optimize_positions(int n, std::int64_t iterations, int restarts,
                                  std::uint64_t seed, int workers) {
    if (n < 2) {
        throw std::invalid_argument("optimize_positions: n must be >= 2");
    }
    if (iterations < 1 || restarts < 1) {
        throw std::invalid_argument("optimize_positions: budget must be positive");
    }
    if (workers <= 0) {
        workers = static_cast<int>(std::thread::hardware_concurrency());
        workers = std::max(workers, 1);
    }
    std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(restarts));
    std::atomic<int> next{0};
    auto work = [&]() {
        while (true) {
            const int r = next.fetch_add(1);
            if (r >= restarts) {
                return;
            }
            outcomes[static_cast<std::size_t>(r)] = run_restart(n, iterations, seed, r);
        }
    };
    {
        std::vector<std::jthread> pool;
        const int nthreads = std::min(workers, restarts);
        pool.reserve(static_cast<std::size_t>(nthreads));
        for (int i = 0; i < nthreads; ++i) {
            pool.emplace_back(work);
        }
    }
    std::size_t best = 0;
    for (std::size_t r = 1; r < outcomes.size(); ++r) {
        if (outcomes[r].value > outcomes[best].value) {
            best = r;
        }
    }
    OptimizeResult result;
    result.config = make_oned_config(outcomes[best].positions,
                                     "optimize_positions(n=" + std::to_string(n) +
                                         ", seed=" + std::to_string(seed) + ")");
    result.value = outcomes[best].value;
    result.lambda = outcomes[best].lambda;
    result.trace = std::move(outcomes[best].trace);
    return result;
}

std::string OneDConfig::to_json() const {
    nlohmann::json j;
    j["positions"] = positions;
    j["provenance"] = provenance;
    return j.dump(2);
}

OneDConfig OneDConfig::from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    OneDConfig c;
    c.positions = j.at("positions").get<std::vector<double>>();
    c.provenance = j.value("provenance", "");
    check_positions(c.positions);
    return c;
}

}  // namespace cubemax
