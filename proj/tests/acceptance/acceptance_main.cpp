// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failed criteria. Each criterion enforces its own runtime budget.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cubemax/construction.hpp"
#include "cubemax/estimation.hpp"
#include "cubemax/maxfun.hpp"
#include "cubemax/measures.hpp"
#include "cubemax/oned.hpp"
#include "cubemax/probability.hpp"

using namespace cubemax;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void criterion(int number, const std::string& label, double budget_seconds,
               const std::function<bool(std::string&)>& body) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
        ok = false;
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (elapsed > budget_seconds) {
        ok = false;
        detail += (detail.empty() ? "" : "; ") + std::string("runtime ") +
                  std::to_string(elapsed) + "s exceeds budget";
    }
    std::printf("[%s] criterion %d: %s (%.1fs)%s%s\n", ok ? "PASS" : "FAIL", number,
                label.c_str(), elapsed, detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) {
        ++g_failures;
    }
}

double exact_binom_coeff(std::int64_t n, std::int64_t k) {
    double c = 1.0;
    for (std::int64_t i = 1; i <= k; ++i) {
        c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
    }
    return c;
}

std::string run_and_capture(const std::string& cmd) {
    FILE* pipe = popen((cmd + " 2>&1").c_str(), "r");
    if (pipe == nullptr) {
        return "";
    }
    std::string out;
    char buf[4096];
    while (fgets(buf, sizeof(buf), pipe) != nullptr) {
        out += buf;
    }
    pclose(pipe);
    return out;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace

int main() {
    std::printf("cubemax acceptance suite\n");

    criterion(1, "maximal-function exactness vs dense oracle and materialized windows", 10.0,
              [](std::string& detail) {
        std::mt19937_64 rng(20240501);
        std::uniform_real_distribution<double> coord(-2.5, 2.5);
        std::uniform_real_distribution<double> weight(0.25, 3.0);
        int checked = 0;
        for (int trial = 0; trial < 200; ++trial) {
            const int d = 1 + static_cast<int>(rng() % 3);
            const int npts = 1 + static_cast<int>(rng() % 20);
            std::vector<WeightedPoint> pts;
            for (int i = 0; i < npts; ++i) {
                WeightedPoint p;
                for (int j = 0; j < d; ++j) {
                    p.x.push_back(coord(rng));
                }
                p.w = weight(rng);
                pts.push_back(std::move(p));
            }
            const DeltaMeasure m(d, std::move(pts));
            std::vector<double> x(static_cast<std::size_t>(d));
            for (auto& v : x) {
                v = coord(rng);
            }
            const EvalResult ev = eval_max(m, x, 4.0);
            if (std::isinf(ev.value)) {
                continue;
            }
            const double oracle = eval_max_dense_oracle(m, x, 4.0, 1200);
            if (std::abs(ev.value - oracle) > 1e-9 * std::max(1.0, std::abs(oracle))) {
                detail = "dense oracle mismatch";
                return false;
            }
            ++checked;
        }
        // lattice evaluator vs explicitly materialized window, width 11
        std::uniform_real_distribution<double> inner(-1.2, 1.2);
        for (int d = 1; d <= 3; ++d) {
            const LatticeWindow w = make_window(d, -5, 5);
            const DeltaMeasure mat = materialize(w);
            for (int trial = 0; trial < 25; ++trial) {
                std::vector<double> x(static_cast<std::size_t>(d));
                for (auto& v : x) {
                    v = inner(rng);
                }
                const double r_max = 0.4 + 3.0 * std::uniform_real_distribution<double>(0, 1)(rng);
                const EvalResult a = eval_max_lattice(x, w, r_max);
                const EvalResult b = eval_max(mat, x, r_max);
                if (std::isinf(a.value) != std::isinf(b.value)) {
                    detail = "sentinel mismatch";
                    return false;
                }
                if (!std::isinf(a.value) &&
                    std::abs(a.value - b.value) > 1e-9 * std::max(1.0, b.value)) {
                    detail = "lattice/materialized mismatch";
                    return false;
                }
            }
        }
        detail = std::to_string(checked) + " oracle instances";
        return true;
    });

    criterion(2, "pointwise Claim-4 inequality, zero violations", 60.0, [](std::string& detail) {
        std::mt19937_64 rng(777);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        std::int64_t checks = 0;
        for (const std::int64_t d : {5, 20, 100}) {
            for (const double u : {0.125, 0.25}) {
                const LevelProfile profile = make_profile(u, 2.0, d);
                const auto s_cap = static_cast<std::int64_t>(std::ceil(2.0 * profile.s0));
                const std::int64_t s_top = std::max<std::int64_t>(1, s_cap);
                LatticeEvaluator eval(infinite_lattice(static_cast<int>(d)));
                for (int trial = 0; trial < 1000; ++trial) {
                    std::vector<double> x(static_cast<std::size_t>(d));
                    for (auto& v : x) {
                        v = unif(rng);
                    }
                    const CoordinateClassification cls = classify(x, u);
                    for (std::int64_t s = 1; s <= s_top; ++s) {
                        const double radius = static_cast<double>(s) - 0.5 * u;
                        std::size_t off_idx = 0;
                        for (std::int64_t j = 0; j < d; ++j) {
                            const bool off = off_idx < cls.off_center.size() &&
                                             cls.off_center[off_idx] == j;
                            if (off) {
                                ++off_idx;
                            }
                            const std::int64_t cnt =
                                axis_count(x[static_cast<std::size_t>(j)], radius);
                            const std::int64_t need = off ? 2 * s - 1 : 2 * s;
                            if (cnt < need) {
                                detail = "axis count violation";
                                return false;
                            }
                            ++checks;
                        }
                    }
                    const Claim4Bound cb =
                        claim4_bound_for_count(cls.k, profile, std::max<std::int64_t>(3, s_top));
                    const double ev =
                        eval.evaluate(x, static_cast<double>(std::max<std::int64_t>(3, s_top)))
                            .value;
                    if (ev < cb.value * (1.0 - 1e-9)) {
                        detail = "eval below claim4 bound";
                        return false;
                    }
                }
            }
        }
        detail = std::to_string(checks) + " axis checks";
        return true;
    });

    criterion(3, "Claim 1 bracket on the doubling schedule", 60.0, [](std::string& detail) {
        std::vector<std::int64_t> schedule;
        for (std::int64_t d = 1000; d <= 512000; d *= 2) {
            schedule.push_back(d);
        }
        schedule.push_back(1000000);
        const double u = 0.125;
        std::ostringstream note;
        for (const double t : {2.0, 3.0}) {
            const Bracket b = claim1_bracket(t);
            const double clt = normal_tail(-t - 1.0 / t, -t);
            std::int64_t threshold = -1;
            for (auto it = schedule.rbegin(); it != schedule.rend(); ++it) {
                const double v = exact_Eu_measure(make_profile(u, t, *it));
                const bool inside = b.lo < v && v < b.hi && v >= 0.5 * clt &&
                                    v <= std::numbers::sqrt2 * clt;
                if (!inside) {
                    break;
                }
                threshold = *it;
            }
            if (threshold < 0) {
                detail = "bracket fails even at d = 10^6 for t = " + std::to_string(t);
                return false;
            }
            note << "D(u=1/8, t=" << t << ") = " << threshold << "  ";
        }
        detail = note.str();
        return true;
    });

    criterion(4, "Claim 2 at finite d and the (k,m) double-sum oracle", 60.0,
              [](std::string& detail) {
        const double t = 2.0;
        const double u = 0.25;
        // literal v = u - t^{-4/3} is negative at t = 2; clamp to the level
        // range floor 1/8 (see decisions ledger)
        const double v = std::max(0.125, u - std::pow(t, -4.0 / 3.0));

        // oracle at d = 50: explicit (k,m) double sum with exact binomials
        {
            const std::int64_t d = 50;
            const LevelProfile pu = make_profile(u, t, d);
            const double sigma_v = std::sqrt(v * (1.0 - v));
            const auto m_cap = static_cast<std::int64_t>(std::floor(
                v * static_cast<double>(d) - t * sigma_v * std::sqrt(static_cast<double>(d))));
            const auto k_min = static_cast<std::int64_t>(std::floor(pu.k_lo)) + 1;
            const auto k_max = static_cast<std::int64_t>(std::floor(pu.r0));
            double expected = 0.0;
            for (std::int64_t k = k_min; k <= k_max; ++k) {
                for (std::int64_t m = 0; m <= std::min(k, m_cap); ++m) {
                    expected += exact_binom_coeff(d, k) * std::pow(u, static_cast<double>(k)) *
                                std::pow(1.0 - u, static_cast<double>(d - k)) *
                                exact_binom_coeff(k, m) * std::pow(v / u, static_cast<double>(m)) *
                                std::pow(1.0 - v / u, static_cast<double>(k - m));
                }
            }
            const double got = pairwise_intersection_bound(d, u, v, t);
            if (std::abs(got - expected) > 1e-10 * std::max(1.0, expected)) {
                detail = "double-sum oracle mismatch at d = 50";
                return false;
            }
        }

        std::vector<std::int64_t> schedule;
        for (std::int64_t d = 1000; d <= 64000; d *= 2) {
            schedule.push_back(d);
        }
        schedule.push_back(100000);
        const double factor = claim2_factor(t);
        std::int64_t threshold = -1;
        for (auto it = schedule.rbegin(); it != schedule.rend(); ++it) {
            const double lhs = pairwise_intersection_bound(*it, u, v, t);
            const double rhs = factor * exact_Eu_measure(make_profile(u, t, *it));
            if (lhs > rhs) {
                break;
            }
            threshold = *it;
        }
        if (threshold < 0) {
            detail = "inequality fails on the whole schedule up to 10^5";
            return false;
        }
        std::ostringstream note;
        note << "v clamped to " << v << ", holds for tested d >= " << threshold;
        detail = note.str();
        return true;
    });

    criterion(5, "Claim 3 union bound clears the closed-form floor at t=3, d=10^5", 60.0,
              [](std::string& detail) {
        const UnionBound ub = union_lower_bound(100000, 3.0);
        std::ostringstream note;
        note << "lower = " << ub.lower << ", floor = " << ub.closed_form_floor;
        detail = note.str();
        return ub.lower >= ub.closed_form_floor;
    });

    criterion(6, "MS floor recovered by best_bound at d in {2,5,10}", 300.0,
              [](std::string& detail) {
        std::ostringstream note;
        for (const std::int64_t d : {2, 5, 10}) {
            McConfig cfg;
            cfg.samples = 100000;
            cfg.seed = 42;
            const BestBoundResult r = best_bound(d, cfg);
            const double ms = ms_bound(d);
            const double se_value = r.rows[r.best_index].std_err * r.alpha;
            note << "d=" << d << ": value " << r.value << " vs ms " << ms << "  ";
            if (r.value < ms - 3.0 * se_value) {
                detail = note.str();
                return false;
            }
        }
        detail = note.str();
        return true;
    });

    criterion(7, "statistical cross-checks against exact formulas", 60.0,
              [](std::string& detail) {
        McConfig cfg;
        cfg.samples = 100000;
        cfg.seed = 4242;
        const McEstimate e = estimate_Eu(200, 0.125, 2.0, cfg);
        const double exact = exact_Eu_measure(make_profile(0.125, 2.0, 200));
        if (std::abs(e.p_hat - exact) > 3.0 * std::max(e.std_err, 1e-9)) {
            detail = "estimate_Eu outside 3 SE";
            return false;
        }
        // A_{u,K} ∩ A_{v,M} frequency at d = 10, |K| = 3, |M| = 1
        const std::int64_t d = 10, k = 3, m = 1;
        const double u = 0.25, v = 0.125;
        const double p_exact = intersection_measure(u, v, d, k, m);
        std::mt19937_64 rng(99);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        const int N = 100000;
        int hits = 0;
        for (int i = 0; i < N; ++i) {
            bool ok = true;
            for (std::int64_t j = 0; j < d && ok; ++j) {
                const double x = unif(rng);
                const bool off_u = x < u / 2 || x > 1 - u / 2;
                const bool off_v = x < v / 2 || x > 1 - v / 2;
                const bool want_off_u = j < k;
                const bool want_off_v = j < m;
                ok = off_u == want_off_u && off_v == want_off_v;
            }
            hits += ok;
        }
        const double p_hat = static_cast<double>(hits) / N;
        const double se = std::sqrt(p_exact * (1 - p_exact) / N);
        std::ostringstream note;
        note << "Eu: " << e.p_hat << " vs " << exact << "; A-cap freq " << p_hat << " vs "
             << p_exact;
        detail = note.str();
        return std::abs(p_hat - p_exact) <= 3.0 * se;
    });

    criterion(8, "1-D refutation search: value > 1.5 and <= 1.56760 at n = 16", 120.0,
              [](std::string& detail) {
        const OptimizeResult r = optimize_positions(16, 400, 20, 1, 0);
        std::ostringstream note;
        note << "value = " << r.value << " at lambda = " << r.lambda;
        detail = note.str();
        return r.value > 1.5 && r.value <= 1.56760;
    });

    criterion(9, "trivial exactness", 10.0, [](std::string& detail) {
        const OneDConfig single = make_oned_config({0.0});
        for (const double lambda : {0.1, 1.0, 10.0}) {
            if (std::abs(functional_1d(single, lambda) - 1.0) > 1e-12) {
                detail = "single-delta functional off at lambda " + std::to_string(lambda);
                return false;
            }
        }
        const DeltaMeasure origin(1, {{{0.0}, 1.0}});
        const EvalResult ev = eval_max(origin, std::vector<double>{0.25}, 10.0);
        if (ev.value != 2.0) {
            detail = "single delta at origin: M(0.25) != 2";
            return false;
        }
        return true;
    });

    criterion(10, "byte-identical MC reports across worker counts", 120.0,
              [](std::string& detail) {
        const fs::path base = fs::temp_directory_path() / "cubemax_acceptance_det";
        fs::remove_all(base);
        const fs::path d1 = base / "w1";
        const fs::path d2 = base / "w3";
        fs::create_directories(d1);
        fs::create_directories(d2);
        const std::string cli = CUBEMAX_CLI_PATH;
        const std::string common = " mc-bound --d 3 --samples 40000 --seed 7 ";
        run_and_capture(cli + " --out-dir " + d1.string() + common + "--workers 1");
        run_and_capture(cli + " --out-dir " + d2.string() + common + "--workers 3");
        const std::string csv1 = slurp(d1 / "mc_bound.csv");
        const std::string csv2 = slurp(d2 / "mc_bound.csv");
        const std::string json1 = slurp(d1 / "mc_bound.json");
        const std::string json2 = slurp(d2 / "mc_bound.json");
        if (csv1.empty() || json1.empty()) {
            detail = "missing reports";
            return false;
        }
        detail = "csv " + std::to_string(csv1.size()) + " bytes";
        return csv1 == csv2 && json1 == json2;
    });

    std::printf("%d of 10 criteria passed\n", 10 - g_failures);
    return g_failures == 0 ? 0 : 1;
}
