#include "cubemax/probability.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "json.hpp"

namespace cubemax {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double pairwise_sum(const double* v, std::size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            s += v[i];
        }
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(v, half) + pairwise_sum(v + half, n - half);
}

}  // namespace

double BinomialSpec::sd() const { return std::sqrt(static_cast<double>(n) * p * (1.0 - p)); }

BinomialSpec make_binomial(std::int64_t n, double p) {
    if (n < 1) {
        throw std::invalid_argument("BinomialSpec: n must be positive");
    }
    if (!(p > 0.0 && p < 1.0)) {
        throw std::invalid_argument("BinomialSpec: p must lie in (0, 1)");
    }
    return BinomialSpec{n, p};
}

double log_binom_pmf(const BinomialSpec& spec, std::int64_t k) {
    if (k < 0 || k > spec.n) {
        return kNegInf;
    }
    const double n = static_cast<double>(spec.n);
    const double kk = static_cast<double>(k);
    return std::lgamma(n + 1.0) - std::lgamma(kk + 1.0) - std::lgamma(n - kk + 1.0) +
           kk * std::log(spec.p) + (n - kk) * std::log1p(-spec.p);
}

double binom_range_prob(const BinomialSpec& spec, double lo, double hi) {
    if (!(lo < hi)) {
        throw std::invalid_argument("binom_range_prob: requires lo < hi");
    }
    std::int64_t k_min = static_cast<std::int64_t>(std::floor(lo)) + 1;
    std::int64_t k_max = static_cast<std::int64_t>(std::floor(hi));
    k_min = std::max<std::int64_t>(k_min, 0);
    k_max = std::min<std::int64_t>(k_max, spec.n);
    if (k_min > k_max) {
        return 0.0;
    }
    const std::size_t count = static_cast<std::size_t>(k_max - k_min + 1);
    std::vector<double> logs(count);
    double max_log = kNegInf;
    for (std::size_t i = 0; i < count; ++i) {
        logs[i] = log_binom_pmf(spec, k_min + static_cast<std::int64_t>(i));
        max_log = std::max(max_log, logs[i]);
    }
    if (max_log == kNegInf) {
        return 0.0;
    }
    for (double& l : logs) {
        l = std::exp(l - max_log);
    }
    return std::exp(max_log) * pairwise_sum(logs.data(), logs.size());
}

double normal_tail(double a, double b) {
    if (!(a < b)) {
        throw std::invalid_argument("normal_tail: requires a < b");
    }
    const double inv_sqrt2 = std::numbers::sqrt2 / 2.0;
    const double ca = std::isinf(a) && a < 0 ? 2.0 : std::erfc(a * inv_sqrt2);
    const double cb = std::isinf(b) && b > 0 ? 0.0 : std::erfc(b * inv_sqrt2);
    return 0.5 * (ca - cb);
}

double exact_Eu_measure(const LevelProfile& profile) {
    if (!(profile.k_lo < profile.r0)) {
        return 0.0;
    }
    return binom_range_prob(make_binomial(profile.d, profile.u), profile.k_lo, profile.r0);
}

Bracket claim1_bracket(double t) {
    if (!(t > 0.0)) {
        throw std::invalid_argument("claim1_bracket: t must be positive");
    }
    const double e2 = std::exp(2.0);
    const double core = std::exp(-0.5 * t * t);
    Bracket b;
    b.lo = core / (2.0 * e2 * t * std::sqrt(2.0 * std::numbers::pi));
    b.hi = core / (t * std::sqrt(std::numbers::pi));
    return b;
}

double claim2_factor(double t) {
    if (!(t > 0.0)) {
        throw std::invalid_argument("claim2_factor: t must be positive");
    }
    return std::pow(t, -1.0 / 3.0) * std::exp(-2.0 * std::cbrt(t * t) / 9.0);
}

double pairwise_intersection_bound(std::int64_t d, double u, double v, double t) {
    if (!(0.0 < v && v < u && u < 1.0)) {
        throw std::invalid_argument("pairwise_intersection_bound: requires 0 < v < u < 1");
    }
    const LevelProfile pu = make_profile(u, t, d);
    const double sigma_v = std::sqrt(v * (1.0 - v));
    const double m_cap =
        v * static_cast<double>(d) - t * sigma_v * std::sqrt(static_cast<double>(d));
    if (m_cap < 0.0) {
        return 0.0;
    }
    std::int64_t k_min = static_cast<std::int64_t>(std::floor(pu.k_lo)) + 1;
    std::int64_t k_max = static_cast<std::int64_t>(std::floor(pu.r0));
    k_min = std::max<std::int64_t>(k_min, 0);
    k_max = std::min<std::int64_t>(k_max, d);
    if (k_min > k_max) {
        return 0.0;
    }
    const BinomialSpec outer = make_binomial(d, u);
    const double ratio = v / u;
    std::vector<double> terms;
    terms.reserve(static_cast<std::size_t>(k_max - k_min + 1));
    for (std::int64_t k = k_min; k <= k_max; ++k) {
        const double weight = std::exp(log_binom_pmf(outer, k));
        double tail = 1.0;
        if (k > 0) {
            tail = binom_range_prob(make_binomial(k, ratio), -1.0, m_cap);
        }
        terms.push_back(weight * tail);
    }
    return pairwise_sum(terms.data(), terms.size());
}

double claim2_standardized_margin(std::int64_t d, double u, double v, double t) {
    if (!(0.0 < v && v < u && u < 1.0)) {
        throw std::invalid_argument("claim2_standardized_margin: requires 0 < v < u < 1");
    }
    const double dd = static_cast<double>(d);
    const double sqd = std::sqrt(dd);
    const double sigma_v = std::sqrt(v * (1.0 - v));
    // lower bound on E(S_{v/u,k}) and upper bound on sigma(S_{v/u,k}) over the band
    const double mean_lb = v * dd - (t + 1.0 / t) * v * sqd * std::sqrt(1.0 / u - 1.0);
    const double sd_ub = std::sqrt(v * dd * (1.0 - v / u));
    return (mean_lb - (v * dd - t * sigma_v * sqd)) / sd_ub;
}

std::vector<double> u_grid(double t, double a, double b) {
    if (!(t > 1.0)) {
        throw std::invalid_argument("u_grid: t must exceed 1");
    }
    if (!(0.0 < a && a <= b && b < 1.0)) {
        throw std::invalid_argument("u_grid: requires 0 < a <= b < 1");
    }
    const double step = std::pow(t, -4.0 / 3.0);
    std::vector<double> grid;
    for (std::int64_t j = 0;; ++j) {
        const double u = a + static_cast<double>(j) * step;
        if (u > b) {
            break;
        }
        grid.push_back(u);
    }
    if (grid.empty()) {
        throw std::invalid_argument("u_grid: empty grid");
    }
    return grid;
}

UnionBound union_lower_bound(std::int64_t d, double t, double a, double b) {
    UnionBound out;
    out.levels = u_grid(t, a, b);
    std::vector<double> sizes;
    sizes.reserve(out.levels.size());
    for (double u : out.levels) {
        sizes.push_back(exact_Eu_measure(make_profile(u, t, d)));
    }
    out.exact_sum = pairwise_sum(sizes.data(), sizes.size());
    double pairs = 0.0;
    for (std::size_t j = 1; j < out.levels.size(); ++j) {
        for (std::size_t k = 0; k < j; ++k) {
            pairs += pairwise_intersection_bound(d, out.levels[j], out.levels[k], t);
        }
    }
    out.pairwise_total = pairs;
    out.lower = std::max(0.0, out.exact_sum - out.pairwise_total);
    out.closed_form_floor = std::cbrt(t) * std::exp(-0.5 * t * t) /
                            (20.0 * std::exp(2.0) * std::sqrt(2.0 * std::numbers::pi));
    return out;
}

double theorem_constant(double t) {
    if (!(t > 0.0)) {
        throw std::invalid_argument("theorem_constant: t must be positive");
    }
    return std::cbrt(t) / (40.0 * std::exp(2.0) * std::sqrt(2.0 * std::numbers::pi));
}

const char* claim_name(ClaimId id) {
    switch (id) {
        case ClaimId::claim1:
            return "claim1";
        case ClaimId::claim2:
            return "claim2";
        case ClaimId::claim3:
            return "claim3";
    }
    return "unknown";
}

ClaimReport check_claim1(std::int64_t d, double u, double t) {
    ClaimReport r;
    r.id = ClaimId::claim1;
    r.t = t;
    r.d = d;
    r.u = u;
    r.exact_value = exact_Eu_measure(make_profile(u, t, d));
    const Bracket b = claim1_bracket(t);
    r.bracket_lo = b.lo;
    r.bracket_hi = b.hi;
    r.holds = b.lo < r.exact_value && r.exact_value < b.hi;
    return r;
}

ClaimReport check_claim2(std::int64_t d, double u, double v, double t) {
    ClaimReport r;
    r.id = ClaimId::claim2;
    r.t = t;
    r.d = d;
    r.u = u;
    r.v = v;
    r.exact_value = pairwise_intersection_bound(d, u, v, t);
    r.bracket_lo = 0.0;
    r.bracket_hi = claim2_factor(t) * exact_Eu_measure(make_profile(u, t, d));
    r.holds = r.exact_value <= r.bracket_hi;
    return r;
}

ClaimReport check_claim3(std::int64_t d, double t) {
    ClaimReport r;
    r.id = ClaimId::claim3;
    r.t = t;
    r.d = d;
    const UnionBound ub = union_lower_bound(d, t);
    r.exact_value = ub.lower;
    r.bracket_lo = ub.closed_form_floor;
    r.bracket_hi = std::numeric_limits<double>::infinity();
    r.holds = r.exact_value >= r.bracket_lo;
    return r;
}

std::string claim_reports_to_json(const std::vector<ClaimReport>& reports) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : reports) {
        nlohmann::json j;
        j["claim_id"] = claim_name(r.id);
        j["t"] = r.t;
        j["d"] = r.d;
        j["u"] = r.u;
        j["v"] = r.v;
        j["exact_value"] = r.exact_value;
        j["bracket_lo"] = r.bracket_lo;
        j["bracket_hi"] = std::isinf(r.bracket_hi) ? nlohmann::json() : nlohmann::json(r.bracket_hi);
        j["holds"] = r.holds;
        arr.push_back(std::move(j));
    }
    return arr.dump(2);
}

std::vector<std::string> claim_report_csv_header() {
    return {"claim_id", "t", "d", "u", "v", "exact_value", "bracket_lo", "bracket_hi", "holds"};
}

namespace {
std::string fmt12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}
}  // namespace

std::vector<std::string> claim_report_csv_row(const ClaimReport& r) {
    return {claim_name(r.id),     fmt12(r.t),          fmt12(static_cast<double>(r.d)),
            fmt12(r.u),           fmt12(r.v),          fmt12(r.exact_value),
            fmt12(r.bracket_lo),  fmt12(r.bracket_hi), r.holds ? "true" : "false"};
}

}  // namespace cubemax
