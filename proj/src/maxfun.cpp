#include "cubemax/maxfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cubemax {

namespace {

constexpr double kDedupTol = 0x1.0p-40;
constexpr double kInf = std::numeric_limits<double>::infinity();

// count / (2r)^d ; exact division for small d, log-space otherwise.
double ratio_value(double count, double r, std::int64_t d) {
    if (d <= 64) {
        double denom = 1.0;
        const double side = 2.0 * r;
        for (std::int64_t i = 0; i < d; ++i) {
            denom *= side;
        }
        if (denom > 1e-300 && denom < 1e300) {
            return count / denom;
        }
    }
    return std::exp(std::log(count) - static_cast<double>(d) * std::log(2.0 * r));
}

void check_eval_args(int dim, std::span<const double> x, double r_max) {
    if (static_cast<int>(x.size()) != dim) {
        throw std::invalid_argument("eval_max: point dimension mismatch");
    }
    if (!(r_max > 0.0)) {
        throw std::invalid_argument("eval_max: r_max must be positive");
    }
}

std::vector<double> dedupe_ascending(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    std::vector<double> out;
    out.reserve(values.size());
    std::size_t i = 0;
    while (i < values.size()) {
        double rep = values[i];
        std::size_t j = i + 1;
        while (j < values.size() && values[j] - rep < kDedupTol) {
            rep = values[j];
            ++j;
        }
        out.push_back(rep);
        i = j;
    }
    return out;
}

}  // namespace

double default_lattice_rmax(int dimension) {
    return std::ceil(std::sqrt(static_cast<double>(dimension))) + 1.0;
}

std::vector<double> candidate_radii(const DeltaMeasure& measure, std::span<const double> x,
                                    double r_max) {
    check_eval_args(measure.dimension(), x, r_max);
    std::vector<double> dists;
    dists.reserve(measure.points().size());
    for (const auto& p : measure.points()) {
        const double r = linf_distance(p.x, x);
        if (r > 0.0 && r <= r_max) {
            dists.push_back(r);
        }
    }
    return dedupe_ascending(std::move(dists));
}

std::vector<double> candidate_radii(const LatticeWindow& window, std::span<const double> x,
                                    double r_max) {
    check_eval_args(window.dimension, x, r_max);
    std::vector<double> dists;
    for (double xj : x) {
        double first = std::ceil(xj - r_max);
        double last = std::floor(xj + r_max);
        if (!window.infinite) {
            first = std::max(first, static_cast<double>(window.lo));
            last = std::min(last, static_cast<double>(window.hi));
        }
        for (double n = first; n <= last; n += 1.0) {
            const double r = std::abs(xj - n);
            if (r > 0.0 && r <= r_max) {
                dists.push_back(r);
            }
        }
    }
    return dedupe_ascending(std::move(dists));
}

EvalResult eval_max(const DeltaMeasure& measure, std::span<const double> x, double r_max) {
    check_eval_args(measure.dimension(), x, r_max);
    const std::int64_t d = measure.dimension();

    std::vector<std::pair<double, double>> dist_weight;
    dist_weight.reserve(measure.points().size());
    bool beyond = false;
    for (const auto& p : measure.points()) {
        const double r = linf_distance(p.x, x);
        if (r == 0.0) {
            return EvalResult{kInf, std::nullopt, false};
        }
        if (r <= r_max) {
            dist_weight.emplace_back(r, p.w);
        } else {
            beyond = true;
        }
    }
    if (dist_weight.empty()) {
        return EvalResult{0.0, std::nullopt, beyond};
    }
    std::sort(dist_weight.begin(), dist_weight.end());

    double best_value = 0.0;
    std::optional<double> best_radius;
    double cum_weight = 0.0;
    std::size_t i = 0;
    while (i < dist_weight.size()) {
        double rep = dist_weight[i].first;
        cum_weight += dist_weight[i].second;
        std::size_t j = i + 1;
        while (j < dist_weight.size() && dist_weight[j].first - rep < kDedupTol) {
            rep = dist_weight[j].first;
            cum_weight += dist_weight[j].second;
            ++j;
        }
        const double value = ratio_value(cum_weight, rep, d);
        if (value > best_value) {
            best_value = value;
            best_radius = rep;
        }
        i = j;
    }
    return EvalResult{best_value, best_radius, beyond};
}

LatticeEvaluator::LatticeEvaluator(LatticeWindow window) : window_(window) {
    counts_.assign(static_cast<std::size_t>(window_.dimension), 0);
}

EvalResult LatticeEvaluator::evaluate(std::span<const double> x, double r_max) {
    check_eval_args(window_.dimension, x, r_max);
    const std::int64_t d = window_.dimension;

    distances_.clear();
    std::fill(counts_.begin(), counts_.end(), std::int64_t{0});

    int axes_with_atom_at_x = 0;
    bool beyond = window_.infinite;
    for (std::int64_t j = 0; j < d; ++j) {
        const double xj = x[static_cast<std::size_t>(j)];
        double first = std::ceil(xj - r_max);
        double last = std::floor(xj + r_max);
        if (!window_.infinite) {
            first = std::max(first, static_cast<double>(window_.lo));
            last = std::min(last, static_cast<double>(window_.hi));
            const double reach =
                std::max(xj - static_cast<double>(window_.lo), static_cast<double>(window_.hi) - xj);
            beyond = beyond || reach > r_max;
        }
        for (double n = first; n <= last; n += 1.0) {
            const double r = std::abs(xj - n);
            if (r == 0.0) {
                counts_[static_cast<std::size_t>(j)] = 1;
                ++axes_with_atom_at_x;
            } else if (r <= r_max) {
                distances_.push_back(AxisDistance{r, static_cast<std::int32_t>(j), 1});
            }
        }
    }
    if (axes_with_atom_at_x == d) {
        return EvalResult{kInf, std::nullopt, false};
    }
    if (distances_.empty()) {
        return EvalResult{0.0, std::nullopt, beyond};
    }

    std::sort(distances_.begin(), distances_.end(),
              [](const AxisDistance& a, const AxisDistance& b) { return a.r < b.r; });

    std::int64_t zero_axes = 0;
    for (std::int64_t c : counts_) {
        zero_axes += (c == 0);
    }
    const bool exact_products = d <= 64;
    double log_counts = 0.0;
    if (!exact_products) {
        for (std::int64_t c : counts_) {
            if (c > 0) {
                log_counts += std::log(static_cast<double>(c));
            }
        }
    }

    double best_value = 0.0;
    std::optional<double> best_radius;
    std::size_t i = 0;
    while (i < distances_.size()) {
        double rep = distances_[i].r;
        std::size_t j = i;
        while (j < distances_.size() && distances_[j].r - rep < kDedupTol) {
            rep = distances_[j].r;
            const auto axis = static_cast<std::size_t>(distances_[j].axis);
            const std::int64_t before = counts_[axis];
            counts_[axis] = before + distances_[j].multiplicity;
            if (before == 0) {
                --zero_axes;
                if (!exact_products) {
                    log_counts += std::log(static_cast<double>(counts_[axis]));
                }
            } else if (!exact_products) {
                log_counts += std::log(static_cast<double>(counts_[axis])) -
                              std::log(static_cast<double>(before));
            }
            ++j;
        }
        if (zero_axes == 0) {
            double value;
            if (exact_products) {
                double product = 1.0;
                for (std::int64_t c : counts_) {
                    product *= static_cast<double>(c);
                }
                value = ratio_value(product, rep, d);
            } else {
                value = std::exp(log_counts - static_cast<double>(d) * std::log(2.0 * rep));
            }
            if (value > best_value) {
                best_value = value;
                best_radius = rep;
            }
        }
        i = j;
    }
    return EvalResult{best_value, best_radius, beyond};
}

EvalResult eval_max_lattice(std::span<const double> x, const LatticeWindow& window, double r_max) {
    LatticeEvaluator eval(window);
    return eval.evaluate(x, r_max);
}

namespace {

template <typename Measure>
double dense_oracle(const Measure& measure, int dim, std::span<const double> x, double r_max,
                    int steps) {
    if (steps < 1000) {
        throw std::invalid_argument("eval_max_dense_oracle: steps must be >= 1000");
    }
    std::vector<double> radii = candidate_radii(measure, x, r_max);
    radii.reserve(radii.size() + static_cast<std::size_t>(steps));
    for (int i = 1; i <= steps; ++i) {
        radii.push_back(r_max * static_cast<double>(i) / static_cast<double>(steps));
    }
    double best = 0.0;
    for (double r : radii) {
        const double count = count_in_cube(measure, Cube{{x.begin(), x.end()}, r});
        if (count > 0.0) {
            best = std::max(best, ratio_value(count, r, dim));
        }
    }
    return best;
}

}  // namespace

double eval_max_dense_oracle(const DeltaMeasure& measure, std::span<const double> x, double r_max,
                             int steps) {
    return dense_oracle(measure, measure.dimension(), x, r_max, steps);
}

double eval_max_dense_oracle(const LatticeWindow& window, std::span<const double> x, double r_max,
                             int steps) {
    return dense_oracle(window, window.dimension, x, r_max, steps);
}

}  // namespace cubemax
