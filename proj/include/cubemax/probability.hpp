#pragma once

// Exact binomial computation in place of the CLT steps, plus the closed-form
// brackets of the three claims and the final theorem constant.

#include <cstdint>
#include <string>
#include <vector>

#include "cubemax/construction.hpp"

namespace cubemax {

struct BinomialSpec {
    std::int64_t n = 1;
    double p = 0.5;

    double mean() const { return static_cast<double>(n) * p; }
    double sd() const;
};

BinomialSpec make_binomial(std::int64_t n, double p);

// log C(n,k) + k log p + (n-k) log(1-p); -inf outside [0, n].
double log_binom_pmf(const BinomialSpec& spec, std::int64_t k);

// P(lo < X <= hi), exact sum over the integer range via log-sum-exp with
// pairwise tree summation.
double binom_range_prob(const BinomialSpec& spec, double lo, double hi);

// P(a < Z <= b) for standard normal Z, via erfc.
double normal_tail(double a, double b);

// |E^u| = P(k_lo < S_{u,d} <= r0), exact.
double exact_Eu_measure(const LevelProfile& profile);

struct Bracket {
    double lo = 0.0;
    double hi = 0.0;
};

// e^{-t^2/2} / (2 e^2 t sqrt(2 pi))  <  |E^u|  <  e^{-t^2/2} / (t sqrt(pi))
Bracket claim1_bracket(double t);

// t^{-1/3} e^{-2 t^{2/3} / 9}
double claim2_factor(double t);

// Exact upper bound on |E^u ∩ E^v|: sum over k in the E^u band of
// C(d,k) u^k (1-u)^{d-k} P(S_{v/u,k} <= v d - t sigma_v sqrt(d)).
double pairwise_intersection_bound(std::int64_t d, double u, double v, double t);

// Standardized threshold margin of the intermediate CLT step, computed from
// the mean/variance bounds of the band; diagnostic, compared against
// 2 t^{1/3} / 3.
double claim2_standardized_margin(std::int64_t d, double u, double v, double t);

// {a + j t^{-4/3} : j = 0..M}, largest grid not exceeding b.
std::vector<double> u_grid(double t, double a = 0.125, double b = 0.25);

struct UnionBound {
    double exact_sum = 0.0;
    double pairwise_total = 0.0;
    double lower = 0.0;
    double closed_form_floor = 0.0;
    std::vector<double> levels;
};

UnionBound union_lower_bound(std::int64_t d, double t, double a = 0.125, double b = 0.25);

// t^{1/3} / (40 e^2 sqrt(2 pi))
double theorem_constant(double t);

enum class ClaimId { claim1, claim2, claim3 };
const char* claim_name(ClaimId id);

struct ClaimReport {
    ClaimId id = ClaimId::claim1;
    double t = 0.0;
    std::int64_t d = 0;
    double u = 0.0;
    double v = 0.0;  // claim2 only; 0 otherwise
    double exact_value = 0.0;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    bool holds = false;
};

ClaimReport check_claim1(std::int64_t d, double u, double t);
ClaimReport check_claim2(std::int64_t d, double u, double v, double t);
ClaimReport check_claim3(std::int64_t d, double t);

std::string claim_reports_to_json(const std::vector<ClaimReport>& reports);
std::vector<std::string> claim_report_csv_header();
std::vector<std::string> claim_report_csv_row(const ClaimReport& r);

}  // namespace cubemax
