#include "cubemax/construction.hpp"

#include <cmath>
#include <stdexcept>

#include "cubemax/kernels.hpp"
#include "json.hpp"

namespace cubemax {

LevelProfile make_profile(double u, double t, std::int64_t d) {
    if (!(u > 0.0 && u < 1.0)) {
        throw std::invalid_argument("LevelProfile: u must lie in (0, 1)");
    }
    if (!(t > 1.0)) {
        throw std::invalid_argument("LevelProfile: t must exceed 1");
    }
    if (d < 1) {
        throw std::invalid_argument("LevelProfile: d must be positive");
    }
    LevelProfile p;
    p.u = u;
    p.t = t;
    p.d = d;
    p.sigma_u = std::sqrt(u * (1.0 - u));
    const double sqd = std::sqrt(static_cast<double>(d));
    p.r0 = u * static_cast<double>(d) - t * p.sigma_u * sqd;
    p.k_lo = u * static_cast<double>(d) - (t + 1.0 / t) * p.sigma_u * sqd;
    p.s0 = p.sigma_u * sqd / (2.0 * t) + 0.5 * u;
    return p;
}

CoordinateClassification classify(std::span<const double> x, double u) {
    if (!(u > 0.0 && u < 1.0)) {
        throw std::invalid_argument("classify: u must lie in (0, 1)");
    }
    const double lo = 0.5 * u;
    const double hi = 1.0 - 0.5 * u;
    CoordinateClassification c;
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (!(x[j] >= 0.0 && x[j] <= 1.0)) {
            throw std::invalid_argument("classify: coordinate outside [0, 1]");
        }
        if (x[j] < lo || x[j] > hi) {
            c.off_center.push_back(static_cast<std::int32_t>(j));
        }
    }
    c.k = static_cast<std::int64_t>(c.off_center.size());
    return c;
}

std::int64_t off_center_count(std::span<const double> x, double u) {
    return static_cast<std::int64_t>(kernels::count_off_center(x.data(), x.size(), u));
}

bool in_Eu_count(std::int64_t k, const LevelProfile& profile) {
    const double kd = static_cast<double>(k);
    return profile.k_lo < kd && kd <= profile.r0;
}

bool in_Eu(std::span<const double> x, const LevelProfile& profile) {
    return in_Eu_count(classify(x, profile.u).k, profile);
}

double f_lower(double u, std::int64_t d, std::int64_t r, std::int64_t s) {
    if (s < 1) {
        throw std::invalid_argument("f_lower: s must be >= 1");
    }
    if (r < 0 || r > d) {
        throw std::invalid_argument("f_lower: r must lie in [0, d]");
    }
    if (!(u > 0.0 && u < 1.0)) {
        throw std::invalid_argument("f_lower: u must lie in (0, 1)");
    }
    const double half_inv_s = 1.0 / (2.0 * static_cast<double>(s));
    return std::exp(static_cast<double>(r) * std::log1p(-half_inv_s) -
                    static_cast<double>(d) * std::log1p(-u * half_inv_s));
}

double optimal_s0(const LevelProfile& profile) {
    const double d = static_cast<double>(profile.d);
    const double denom = profile.u * d - profile.r0;
    if (!(denom > 0.0)) {
        throw std::invalid_argument("optimal_s0: requires r0 < u d");
    }
    return profile.u * (d - profile.r0) / (2.0 * denom);
}

std::int64_t default_s_cap(const LevelProfile& profile) {
    const double two_s0 = 2.0 * profile.s0;
    const auto cap = static_cast<std::int64_t>(std::ceil(two_s0));
    return std::max<std::int64_t>(3, cap);
}

Claim4Bound claim4_bound_for_count(std::int64_t r, const LevelProfile& profile,
                                   std::int64_t s_cap) {
    if (s_cap < 1) {
        throw std::invalid_argument("claim4_bound: s_cap must be >= 1");
    }
    Claim4Bound best;
    best.value = 0.0;
    for (std::int64_t s = 1; s <= s_cap; ++s) {
        const double v = f_lower(profile.u, profile.d, r, s);
        if (v > best.value) {
            best.value = v;
            best.best_s = s;
        }
    }
    return best;
}

Claim4Bound claim4_bound(std::span<const double> x, const LevelProfile& profile,
                         std::int64_t s_cap) {
    const std::int64_t r = classify(x, profile.u).k;
    return claim4_bound_for_count(r, profile, s_cap);
}

double intersection_measure(double u, double v, std::int64_t d, std::int64_t k, std::int64_t m) {
    if (!(0.0 < v && v < u && u < 1.0)) {
        throw std::invalid_argument("intersection_measure: requires 0 < v < u < 1");
    }
    if (!(0 <= m && m <= k && k <= d)) {
        throw std::invalid_argument("intersection_measure: requires 0 <= m <= k <= d");
    }
    return std::exp(static_cast<double>(m) * std::log(v) +
                    static_cast<double>(k - m) * std::log(u - v) +
                    static_cast<double>(d - k) * std::log1p(-u));
}

double window_correction(std::int64_t d, std::int64_t R) {
    if (R < 1) {
        throw std::invalid_argument("window_correction: R must be >= 1");
    }
    const double dd = static_cast<double>(d);
    const double extra = 2.0 * std::sqrt(dd) + 1.0;
    return std::exp(-dd * std::log1p(extra / static_cast<double>(R)));
}

double ms_bound(std::int64_t d) {
    if (d < 1) {
        throw std::invalid_argument("ms_bound: d must be >= 1");
    }
    const double dd = static_cast<double>(d);
    // ((1 + 2^(1/d))/2)^d = (1 + (2^(1/d)-1)/2)^d, stable for large d
    const double g = std::expm1(std::log(2.0) / dd);
    return std::exp(dd * std::log1p(0.5 * g));
}

const char* provenance_name(Provenance p) {
    switch (p) {
        case Provenance::exact_binomial:
            return "exact-binomial";
        case Provenance::monte_carlo:
            return "monte-carlo";
        case Provenance::closed_form:
            return "closed-form";
    }
    return "unknown";
}

BoundCertificate assemble_certificate(std::int64_t d, double alpha, double superlevel_lower,
                                      std::optional<std::int64_t> R,
                                      Provenance alpha_provenance,
                                      Provenance superlevel_provenance) {
    if (alpha < 0.0 || superlevel_lower < 0.0) {
        throw std::invalid_argument("assemble_certificate: inputs must be nonnegative");
    }
    BoundCertificate c;
    c.d = d;
    c.alpha = alpha;
    c.superlevel_lower = superlevel_lower;
    c.R = R;
    c.window_factor = R ? window_correction(d, *R) : 1.0;
    c.mass_per_cell = 1.0;
    c.bound = alpha * superlevel_lower * c.window_factor / c.mass_per_cell;
    c.alpha_provenance = alpha_provenance;
    c.superlevel_provenance = superlevel_provenance;
    return c;
}

std::string BoundCertificate::to_json() const {
    nlohmann::json j;
    j["d"] = d;
    j["alpha"] = alpha;
    j["superlevel_lower"] = superlevel_lower;
    j["window_factor"] = window_factor;
    j["mass_per_cell"] = mass_per_cell;
    j["bound"] = bound;
    if (R) {
        j["R"] = *R;
    } else {
        j["R"] = nullptr;
        j["asymptotic"] = true;
    }
    j["provenance"] = {{"alpha", provenance_name(alpha_provenance)},
                       {"superlevel", provenance_name(superlevel_provenance)},
                       {"window_factor", "closed-form"}};
    return j.dump();
}

}  // namespace cubemax
