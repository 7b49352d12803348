#pragma once

// Geometric machinery of the lower-bound construction: coordinate
// classification at level u, the band E^u, the pointwise bound f(s), the
// optimal integer radius, intersection product measures, window correction
// and certificate assembly.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cubemax {

struct LevelProfile {
    double u = 0.0;        // level
    double t = 0.0;        // deviation parameter, > 1
    std::int64_t d = 0;    // dimension
    double sigma_u = 0.0;  // sqrt(u(1-u))
    double r0 = 0.0;       // u d - t sigma_u sqrt(d)
    double k_lo = 0.0;     // u d - (t + 1/t) sigma_u sqrt(d)
    double s0 = 0.0;       // sigma_u sqrt(d)/(2t) + u/2
};

LevelProfile make_profile(double u, double t, std::int64_t d);

struct CoordinateClassification {
    std::vector<std::int32_t> off_center;  // axis indices, ascending
    std::int64_t k = 0;
};

// Off-center at level u: x_j in [0, u/2) or (1 - u/2, 1].
CoordinateClassification classify(std::span<const double> x, double u);

// Count-only variant (kernel-backed); skips the coordinate-range check.
std::int64_t off_center_count(std::span<const double> x, double u);

bool in_Eu(std::span<const double> x, const LevelProfile& profile);
bool in_Eu_count(std::int64_t k, const LevelProfile& profile);

// (1 - 1/(2s))^r / (1 - u/(2s))^d, evaluated in log space.
double f_lower(double u, std::int64_t d, std::int64_t r, std::int64_t s);

// u(d - r0) / (2(u d - r0)); equals sigma_u sqrt(d)/(2t) + u/2.
double optimal_s0(const LevelProfile& profile);

std::int64_t default_s_cap(const LevelProfile& profile);  // max(3, ceil(2 s0))

struct Claim4Bound {
    double value = 0.0;
    std::int64_t best_s = 1;
};

Claim4Bound claim4_bound_for_count(std::int64_t r, const LevelProfile& profile,
                                   std::int64_t s_cap);
Claim4Bound claim4_bound(std::span<const double> x, const LevelProfile& profile,
                         std::int64_t s_cap);

// |A_{u,K} ∩ A_{v,M}| = v^m (u-v)^(k-m) (1-u)^(d-k) for nested M ⊂ K.
double intersection_measure(double u, double v, std::int64_t d, std::int64_t k, std::int64_t m);

// (R / (R + 2 sqrt(d) + 1))^d
double window_correction(std::int64_t d, std::int64_t R);

// ((1 + 2^(1/d)) / 2)^d
double ms_bound(std::int64_t d);

enum class Provenance { exact_binomial, monte_carlo, closed_form };
const char* provenance_name(Provenance p);

struct BoundCertificate {
    std::int64_t d = 0;
    double alpha = 0.0;
    double superlevel_lower = 0.0;
    double window_factor = 1.0;
    double mass_per_cell = 1.0;
    double bound = 0.0;
    std::optional<std::int64_t> R;  // nullopt = R -> infinity limit, asymptotic
    Provenance alpha_provenance = Provenance::closed_form;
    Provenance superlevel_provenance = Provenance::exact_binomial;

    std::string to_json() const;
};

BoundCertificate assemble_certificate(std::int64_t d, double alpha, double superlevel_lower,
                                      std::optional<std::int64_t> R,
                                      Provenance alpha_provenance,
                                      Provenance superlevel_provenance);

}  // namespace cubemax
