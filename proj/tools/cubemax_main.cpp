// cubemax: evaluation, claim verification, Monte-Carlo bounds and 1-D search
// for the centered cube maximal function of lattice-type measures.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cubemax/construction.hpp"
#include "cubemax/estimation.hpp"
#include "cubemax/kernels.hpp"
#include "cubemax/maxfun.hpp"
#include "cubemax/measures.hpp"
#include "cubemax/oned.hpp"
#include "cubemax/probability.hpp"
#include "cubemax/report.hpp"
#include "cubemax/version.hpp"

namespace {

using namespace cubemax;

struct RunContext {
    std::string out_dir = ".";
    RunManifest manifest;

    std::string out_path(const std::string& name) const {
        return (std::filesystem::path(out_dir) / name).string();
    }
    void emit(const std::string& name, const std::string& content) {
        const std::string path = out_path(name);
        write_text_file(path, content);
        manifest.outputs.push_back(path);
    }
    void param(const std::string& key, const std::string& value) {
        manifest.parameters[key] = value;
    }
};

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) {
            out.push_back(std::stod(item));
        }
    }
    return out;
}

std::vector<std::int64_t> parse_int_list(const std::string& text) {
    std::vector<std::int64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) {
            out.push_back(static_cast<std::int64_t>(std::llround(std::stod(item))));
        }
    }
    return out;
}

// "1e3:1e6:x2" -> geometric schedule start..end, factor 2
std::vector<std::int64_t> parse_schedule(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) {
        parts.push_back(item);
    }
    if (parts.size() == 1) {
        return parse_int_list(parts[0]);
    }
    if (parts.size() != 3 || parts[2].empty() || parts[2][0] != 'x') {
        throw CLI::ValidationError("schedule must be start:end:xFACTOR or a comma list");
    }
    const double start = std::stod(parts[0]);
    const double end = std::stod(parts[1]);
    const double factor = std::stod(parts[2].substr(1));
    if (!(start >= 1 && end >= start && factor > 1.0)) {
        throw CLI::ValidationError("bad schedule bounds");
    }
    std::vector<std::int64_t> out;
    for (double d = start; d <= end * (1.0 + 1e-12); d *= factor) {
        out.push_back(static_cast<std::int64_t>(std::llround(d)));
    }
    if (out.back() != static_cast<std::int64_t>(std::llround(end))) {
        out.push_back(static_cast<std::int64_t>(std::llround(end)));
    }
    return out;
}

std::vector<std::string> mc_csv_header() {
    return {"d",     "alpha", "p_hat", "std_err", "value", "ci_lo",
            "ci_hi", "r_max", "N",     "seed",    "ms_bound"};
}

std::vector<std::string> mc_csv_row(std::int64_t d, const BestBoundRow& row, double r_max,
                                    std::int64_t n, std::uint64_t seed) {
    return {std::to_string(d),    fmt_g12(row.alpha), fmt_g12(row.p_hat),
            fmt_g12(row.std_err), fmt_g12(row.value), fmt_g12(row.ci_lo),
            fmt_g12(row.ci_hi),   fmt_g12(r_max),     std::to_string(n),
            std::to_string(seed), fmt_g12(ms_bound(d))};
}

nlohmann::json mc_row_json(std::int64_t d, const BestBoundRow& row, double r_max, std::int64_t n,
                           std::uint64_t seed) {
    nlohmann::json j;
    j["d"] = d;
    j["alpha"] = row.alpha;
    j["p_hat"] = row.p_hat;
    j["std_err"] = row.std_err;
    j["value"] = row.value;
    j["ci_lo"] = row.ci_lo;
    j["ci_hi"] = row.ci_hi;
    j["r_max"] = r_max;
    j["N"] = n;
    j["seed"] = seed;
    j["ms_bound"] = ms_bound(d);
    return j;
}

int run_command(const std::string& name, RunContext& ctx, const std::function<void()>& body) {
    ctx.manifest.command = name;
    ctx.manifest.artifact_version = kVersion;
    ctx.manifest.started = iso8601_utc_now();
    int code = 0;
    try {
        std::filesystem::create_directories(ctx.out_dir);
        body();
        ctx.manifest.status = "ok";
    } catch (const std::exception& e) {
        ctx.manifest.status = std::string("error: ") + e.what();
        std::cerr << "error: " << e.what() << "\n";
        code = 1;
    }
    ctx.manifest.finished = iso8601_utc_now();
    try {
        const std::string path = ctx.out_path(name + "_manifest.json");
        write_text_file(path, ctx.manifest.to_json());
    } catch (const std::exception& e) {
        std::cerr << "error writing manifest: " << e.what() << "\n";
        code = code == 0 ? 1 : code;
    }
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"centered cube maximal function: exact evaluation, claim checks, "
                 "Monte-Carlo bounds and 1-D extremal search"};
    app.set_version_flag("--version", cubemax::kVersion);
    app.set_config("--config", "", "key = value configuration file");
    app.require_subcommand(1);

    RunContext ctx;
    const char* env_dir = std::getenv("CUBEMAX_OUT_DIR");
    if (env_dir != nullptr && *env_dir != '\0') {
        ctx.out_dir = env_dir;
    }
    app.add_option("--out-dir", ctx.out_dir,
                   "output directory for reports and manifests (env CUBEMAX_OUT_DIR)")
        ->capture_default_str();
    std::string simd = "auto";
    app.add_option("--simd", simd, "kernel variant: auto|scalar|avx2")
        ->check(CLI::IsMember({"auto", "scalar", "avx2"}))
        ->capture_default_str();

    // ---- eval-point ----
    auto* eval_cmd = app.add_subcommand("eval-point", "evaluate the maximal function at a point");
    int ep_d = 1;
    std::string ep_x = "0.5";
    bool ep_lattice = false;
    std::string ep_measure_file;
    std::string ep_window_file;
    double ep_rmax = 0.0;
    eval_cmd->add_option("--d", ep_d, "dimension")->capture_default_str();
    eval_cmd->add_option("--x", ep_x, "query point, comma separated")->capture_default_str();
    eval_cmd->add_flag("--lattice", ep_lattice, "evaluate against the unbounded integer lattice");
    eval_cmd->add_option("--measure", ep_measure_file, "DeltaMeasure JSON file");
    eval_cmd->add_option("--window", ep_window_file, "LatticeWindow JSON file");
    eval_cmd->add_option("--r-max", ep_rmax,
                         "truncation radius (default: ceil(sqrt(d))+1 for lattice)");

    // ---- ms-bound ----
    auto* ms_cmd = app.add_subcommand("ms-bound", "closed-form lattice lower bound for c_d");
    std::int64_t ms_d = 1;
    ms_cmd->add_option("--d", ms_d, "dimension")->capture_default_str();

    // ---- eu-exact ----
    auto* eu_cmd = app.add_subcommand("eu-exact", "exact band measure |E^u| by binomial summation");
    std::int64_t eu_d = 1000;
    double eu_u = 0.125, eu_t = 2.0;
    eu_cmd->add_option("--d", eu_d, "dimension")->capture_default_str();
    eu_cmd->add_option("--u", eu_u, "level u")->capture_default_str();
    eu_cmd->add_option("--t", eu_t, "deviation parameter t")->capture_default_str();

    // ---- claims ----
    auto* claims_cmd = app.add_subcommand("claims", "verify the quantitative claims on a d-schedule");
    double cl_t = 3.0, cl_u = 0.125, cl_u2 = 0.25, cl_v = 0.0;
    std::string cl_schedule = "1e3:1e6:x2";
    claims_cmd->add_option("--t", cl_t, "deviation parameter t")->capture_default_str();
    claims_cmd->add_option("--u", cl_u, "claim-1 level")->capture_default_str();
    claims_cmd->add_option("--u2", cl_u2, "claim-2 upper level")->capture_default_str();
    claims_cmd->add_option("--v", cl_v,
                           "claim-2 lower level (default max(1/8, u2 - t^(-4/3)))");
    claims_cmd->add_option("--d-schedule", cl_schedule, "start:end:xFACTOR or comma list")
        ->capture_default_str();

    // ---- union-bound ----
    auto* union_cmd = app.add_subcommand("union-bound", "inclusion-exclusion lower bound for the union");
    std::int64_t ub_d = 100000;
    double ub_t = 3.0, ub_a = 0.125, ub_b = 0.25;
    union_cmd->add_option("--d", ub_d, "dimension")->capture_default_str();
    union_cmd->add_option("--t", ub_t, "deviation parameter t")->capture_default_str();
    union_cmd->add_option("--a", ub_a, "grid start")->capture_default_str();
    union_cmd->add_option("--b", ub_b, "grid end")->capture_default_str();

    // ---- mc-bound ----
    auto* mc_cmd = app.add_subcommand("mc-bound", "Monte-Carlo lower bound on c_d per unit cell");
    std::int64_t mc_d = 10;
    McConfig mc_cfg;
    std::string mc_alpha_grid;
    std::int64_t mc_R = 0;
    mc_cmd->add_option("--d", mc_d, "dimension")->capture_default_str();
    mc_cmd->add_option("--samples", mc_cfg.samples, "sample count N")->capture_default_str();
    mc_cmd->add_option("--seed", mc_cfg.seed, "RNG seed")->capture_default_str();
    mc_cmd->add_option("--r-max", mc_cfg.r_max, "truncation radius (0 = ceil(sqrt(d))+1)")
        ->capture_default_str();
    mc_cmd->add_option("--workers", mc_cfg.workers, "worker threads (0 = hardware)")
        ->capture_default_str();
    mc_cmd->add_option("--grid-t", mc_cfg.grid_t, "t shaping the default alpha grid top e^(t^2/2)")
        ->capture_default_str();
    mc_cmd->add_option("--alpha-grid", mc_alpha_grid, "explicit alpha grid, comma separated");
    mc_cmd->add_option("--R", mc_R, "also emit the window-corrected certified bound for this R");

    // ---- sweep ----
    auto* sweep_cmd = app.add_subcommand("sweep", "best_bound rows across dimensions");
    std::string sw_dlist = "1,2,3,5,10";
    McConfig sw_cfg;
    sweep_cmd->add_option("--d-list", sw_dlist, "dimensions, comma separated")->capture_default_str();
    sweep_cmd->add_option("--samples", sw_cfg.samples, "sample count N per dimension")
        ->capture_default_str();
    sweep_cmd->add_option("--seed", sw_cfg.seed, "RNG seed")->capture_default_str();
    sweep_cmd->add_option("--r-max", sw_cfg.r_max, "truncation radius (0 = per-d default)")
        ->capture_default_str();
    sweep_cmd->add_option("--workers", sw_cfg.workers, "worker threads (0 = hardware)")
        ->capture_default_str();
    sweep_cmd->add_option("--grid-t", sw_cfg.grid_t, "t shaping the default alpha grid")
        ->capture_default_str();

    // ---- oned-search ----
    auto* oned_cmd = app.add_subcommand("oned-search", "derivative-free search for extremal 1-D configurations");
    int od_n = 16;
    std::int64_t od_iters = 400;
    int od_restarts = 20, od_workers = 0;
    std::uint64_t od_seed = 1;
    oned_cmd->add_option("--n", od_n, "number of unit deltas")->capture_default_str();
    oned_cmd->add_option("--iterations", od_iters, "coordinate moves per restart")
        ->capture_default_str();
    oned_cmd->add_option("--restarts", od_restarts, "independent restarts")->capture_default_str();
    oned_cmd->add_option("--seed", od_seed, "RNG seed")->capture_default_str();
    oned_cmd->add_option("--workers", od_workers, "worker threads (0 = hardware)")
        ->capture_default_str();

    // ---- certificate ----
    auto* cert_cmd = app.add_subcommand("certificate",
                                        "assemble the exact-route c_d lower-bound certificate");
    std::int64_t ct_d = 100000, ct_R = 0;
    double ct_t = 3.0, ct_a = 0.125, ct_b = 0.25;
    cert_cmd->add_option("--d", ct_d, "dimension")->capture_default_str();
    cert_cmd->add_option("--t", ct_t, "deviation parameter t")->capture_default_str();
    cert_cmd->add_option("--R", ct_R, "window size R (0 = asymptotic R -> infinity)")
        ->capture_default_str();
    cert_cmd->add_option("--a", ct_a, "grid start")->capture_default_str();
    cert_cmd->add_option("--b", ct_b, "grid end")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e);
        }
        app.exit(e);
        return 2;
    }

    if (simd != "auto") {
        try {
            kernels::set_mode(simd == "avx2" ? kernels::SimdMode::avx2
                                             : kernels::SimdMode::scalar);
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 2;
        }
    }

    if (eval_cmd->parsed()) {
        ctx.manifest.seed = 0;
        return run_command("eval-point", ctx, [&] {
            const std::vector<double> x = parse_double_list(ep_x);
            if (static_cast<int>(x.size()) != ep_d) {
                throw std::invalid_argument("--x length must equal --d");
            }
            ctx.param("d", std::to_string(ep_d));
            ctx.param("x", ep_x);
            EvalResult res;
            if (!ep_measure_file.empty()) {
                std::ifstream f(ep_measure_file);
                if (!f) {
                    throw std::runtime_error("cannot read " + ep_measure_file);
                }
                std::stringstream buf;
                buf << f.rdbuf();
                const DeltaMeasure m = DeltaMeasure::from_json(buf.str());
                const double rmax = ep_rmax > 0 ? ep_rmax : 1e6;
                ctx.param("measure", ep_measure_file);
                ctx.param("r_max", fmt_g12(rmax));
                res = eval_max(m, x, rmax);
            } else {
                LatticeWindow w = infinite_lattice(ep_d);
                if (!ep_window_file.empty()) {
                    std::ifstream f(ep_window_file);
                    if (!f) {
                        throw std::runtime_error("cannot read " + ep_window_file);
                    }
                    std::stringstream buf;
                    buf << f.rdbuf();
                    w = LatticeWindow::from_json(buf.str());
                    ctx.param("window", ep_window_file);
                } else if (!ep_lattice) {
                    throw std::invalid_argument(
                        "choose --lattice, --window FILE or --measure FILE");
                }
                const double rmax = ep_rmax > 0 ? ep_rmax : default_lattice_rmax(ep_d);
                ctx.param("lattice", "true");
                ctx.param("r_max", fmt_g12(rmax));
                res = eval_max_lattice(x, w, rmax);
            }
            nlohmann::json j;
            j["value"] = std::isinf(res.value) ? nlohmann::json("inf") : nlohmann::json(res.value);
            j["best_radius"] =
                res.best_radius ? nlohmann::json(*res.best_radius) : nlohmann::json();
            j["truncated"] = res.truncated;
            ctx.emit("eval_point.json", j.dump(2) + "\n");
            std::cout << "value " << fmt_g12(res.value);
            if (res.best_radius) {
                std::cout << " at r " << fmt_g12(*res.best_radius);
            }
            std::cout << (res.truncated ? " (truncated)" : "") << "\n";
        });
    }

    if (ms_cmd->parsed()) {
        return run_command("ms-bound", ctx, [&] {
            ctx.param("d", std::to_string(ms_d));
            const double v = ms_bound(ms_d);
            nlohmann::json j;
            j["d"] = ms_d;
            j["ms_bound"] = v;
            ctx.emit("ms_bound.json", j.dump(2) + "\n");
            std::cout << fmt_g12(v) << "\n";
        });
    }

    if (eu_cmd->parsed()) {
        return run_command("eu-exact", ctx, [&] {
            ctx.param("d", std::to_string(eu_d));
            ctx.param("u", fmt_g12(eu_u));
            ctx.param("t", fmt_g12(eu_t));
            const LevelProfile p = make_profile(eu_u, eu_t, eu_d);
            const double measure = exact_Eu_measure(p);
            nlohmann::json j;
            j["d"] = eu_d;
            j["u"] = eu_u;
            j["t"] = eu_t;
            j["sigma_u"] = p.sigma_u;
            j["k_lo"] = p.k_lo;
            j["r0"] = p.r0;
            j["s0"] = p.s0;
            j["measure"] = measure;
            ctx.emit("eu_exact.json", j.dump(2) + "\n");
            std::cout << "|E^u| = " << fmt_g12(measure) << "  (band (" << fmt_g12(p.k_lo) << ", "
                      << fmt_g12(p.r0) << "])\n";
        });
    }

    if (claims_cmd->parsed()) {
        ctx.manifest.seed = 0;
        return run_command("claims", ctx, [&] {
            const std::vector<std::int64_t> schedule = parse_schedule(cl_schedule);
            const double step = std::pow(cl_t, -4.0 / 3.0);
            const double v = cl_v > 0.0 ? cl_v : std::max(0.125, cl_u2 - step);
            ctx.param("t", fmt_g12(cl_t));
            ctx.param("u", fmt_g12(cl_u));
            ctx.param("u2", fmt_g12(cl_u2));
            ctx.param("v", fmt_g12(v));
            ctx.param("d_schedule", cl_schedule);
            std::vector<ClaimReport> reports;
            for (std::int64_t d : schedule) {
                reports.push_back(check_claim1(d, cl_u, cl_t));
                if (v < cl_u2) {
                    reports.push_back(check_claim2(d, cl_u2, v, cl_t));
                }
                reports.push_back(check_claim3(d, cl_t));
            }
            std::vector<std::vector<std::string>> rows;
            rows.reserve(reports.size());
            for (const auto& r : reports) {
                rows.push_back(claim_report_csv_row(r));
            }
            ctx.emit("claims.csv", csv_table(claim_report_csv_header(), rows));
            ctx.emit("claims.json", claim_reports_to_json(reports) + "\n");
            // first d after which each claim holds on the whole tested tail
            for (const ClaimId id : {ClaimId::claim1, ClaimId::claim2, ClaimId::claim3}) {
                std::int64_t threshold = -1;
                for (auto it = reports.rbegin(); it != reports.rend(); ++it) {
                    if (it->id != id) {
                        continue;
                    }
                    if (!it->holds) {
                        break;
                    }
                    threshold = it->d;
                }
                std::cout << claim_name(id) << ": "
                          << (threshold < 0 ? std::string("does not hold on tested tail")
                                            : "holds for all tested d >= " +
                                                  std::to_string(threshold))
                          << "\n";
            }
        });
    }

    if (union_cmd->parsed()) {
        return run_command("union-bound", ctx, [&] {
            ctx.param("d", std::to_string(ub_d));
            ctx.param("t", fmt_g12(ub_t));
            ctx.param("a", fmt_g12(ub_a));
            ctx.param("b", fmt_g12(ub_b));
            const UnionBound ub = union_lower_bound(ub_d, ub_t, ub_a, ub_b);
            nlohmann::json j;
            j["d"] = ub_d;
            j["t"] = ub_t;
            j["levels"] = ub.levels;
            j["exact_sum"] = ub.exact_sum;
            j["pairwise_total"] = ub.pairwise_total;
            j["lower"] = ub.lower;
            j["closed_form_floor"] = ub.closed_form_floor;
            ctx.emit("union_bound.json", j.dump(2) + "\n");
            std::cout << "levels " << ub.levels.size() << "  exact_sum " << fmt_g12(ub.exact_sum)
                      << "  pairwise_total " << fmt_g12(ub.pairwise_total) << "  lower "
                      << fmt_g12(ub.lower) << "  floor " << fmt_g12(ub.closed_form_floor) << "\n";
        });
    }

    if (mc_cmd->parsed()) {
        ctx.manifest.seed = mc_cfg.seed;
        return run_command("mc-bound", ctx, [&] {
            if (!mc_alpha_grid.empty()) {
                mc_cfg.alpha_grid = parse_double_list(mc_alpha_grid);
            }
            ctx.param("d", std::to_string(mc_d));
            ctx.param("samples", std::to_string(mc_cfg.samples));
            ctx.param("seed", std::to_string(mc_cfg.seed));
            ctx.param("workers", std::to_string(mc_cfg.workers));
            ctx.param("r_max", fmt_g12(mc_cfg.r_max));
            ctx.param("grid_t", fmt_g12(mc_cfg.grid_t));
            ctx.param("alpha_grid", mc_alpha_grid.empty() ? "default" : mc_alpha_grid);
            if (mc_R > 0) {
                ctx.param("R", std::to_string(mc_R));
            }
            const BestBoundResult r = best_bound(mc_d, mc_cfg);
            std::vector<std::vector<std::string>> rows;
            rows.reserve(r.rows.size());
            for (const auto& row : r.rows) {
                rows.push_back(mc_csv_row(mc_d, row, r.r_max, r.n, r.seed));
            }
            ctx.emit("mc_bound.csv", csv_table(mc_csv_header(), rows));
            nlohmann::json j;
            j["d"] = mc_d;
            j["best"] = mc_row_json(mc_d, r.rows[r.best_index], r.r_max, r.n, r.seed);
            j["all_zero"] = r.all_zero;
            nlohmann::json grid_rows = nlohmann::json::array();
            for (const auto& row : r.rows) {
                grid_rows.push_back(mc_row_json(mc_d, row, r.r_max, r.n, r.seed));
            }
            j["rows"] = std::move(grid_rows);
            if (mc_R > 0) {
                const BoundCertificate cert =
                    assemble_certificate(mc_d, r.alpha, r.rows[r.best_index].p_hat, mc_R,
                                         Provenance::monte_carlo, Provenance::monte_carlo);
                j["certified"] = nlohmann::json::parse(cert.to_json());
            }
            ctx.emit("mc_bound.json", j.dump(2) + "\n");
            if (r.all_zero) {
                std::cout << "warning: all p_hat were zero on the grid\n";
            }
            std::cout << "best alpha " << fmt_g12(r.alpha) << "  value " << fmt_g12(r.value)
                      << "  ci [" << fmt_g12(r.ci_lo) << ", " << fmt_g12(r.ci_hi) << "]\n";
        });
    }

    if (sweep_cmd->parsed()) {
        ctx.manifest.seed = sw_cfg.seed;
        return run_command("sweep", ctx, [&] {
            ctx.param("d_list", sw_dlist);
            ctx.param("samples", std::to_string(sw_cfg.samples));
            ctx.param("seed", std::to_string(sw_cfg.seed));
            ctx.param("workers", std::to_string(sw_cfg.workers));
            ctx.param("r_max", fmt_g12(sw_cfg.r_max));
            ctx.param("grid_t", fmt_g12(sw_cfg.grid_t));
            const std::vector<std::int64_t> ds = parse_int_list(sw_dlist);
            const std::vector<SweepRow> rows = sweep_dimensions(ds, sw_cfg);
            std::vector<std::vector<std::string>> csv_rows;
            nlohmann::json arr = nlohmann::json::array();
            for (const auto& row : rows) {
                BestBoundRow b;
                b.alpha = row.alpha;
                b.p_hat = row.p_hat;
                b.std_err = row.std_err;
                b.value = row.value;
                b.ci_lo = row.ci_lo;
                b.ci_hi = row.ci_hi;
                csv_rows.push_back(mc_csv_row(row.d, b, row.r_max, row.n, row.seed));
                arr.push_back(mc_row_json(row.d, b, row.r_max, row.n, row.seed));
                std::cout << "d=" << row.d << "  alpha " << fmt_g12(row.alpha) << "  value "
                          << fmt_g12(row.value) << "  ms_bound " << fmt_g12(row.ms) << "\n";
            }
            ctx.emit("sweep.csv", csv_table(mc_csv_header(), csv_rows));
            ctx.emit("sweep.json", arr.dump(2) + "\n");
        });
    }

    if (oned_cmd->parsed()) {
        ctx.manifest.seed = od_seed;
        return run_command("oned-search", ctx, [&] {
            ctx.param("n", std::to_string(od_n));
            ctx.param("iterations", std::to_string(od_iters));
            ctx.param("restarts", std::to_string(od_restarts));
            ctx.param("seed", std::to_string(od_seed));
            ctx.param("workers", std::to_string(od_workers));
            const OptimizeResult r =
                optimize_positions(od_n, od_iters, od_restarts, od_seed, od_workers);
            ctx.emit("oned_config.json", r.config.to_json() + "\n");
            std::vector<std::vector<std::string>> rows;
            rows.reserve(r.trace.size());
            for (const auto& row : r.trace) {
                rows.push_back({std::to_string(row.iteration), fmt_g12(row.value),
                                fmt_g12(row.step)});
            }
            ctx.emit("oned_trace.csv", csv_table({"iteration", "value", "step"}, rows));
            std::cout << "n " << od_n << "  value " << fmt_g12(r.value) << "  lambda "
                      << fmt_g12(r.lambda) << "\n";
        });
    }

    if (cert_cmd->parsed()) {
        return run_command("certificate", ctx, [&] {
            ctx.param("d", std::to_string(ct_d));
            ctx.param("t", fmt_g12(ct_t));
            ctx.param("R", std::to_string(ct_R));
            ctx.param("a", fmt_g12(ct_a));
            ctx.param("b", fmt_g12(ct_b));
            const UnionBound ub = union_lower_bound(ct_d, ct_t, ct_a, ct_b);
            // guaranteed level on every band: the worst off-center count is
            // floor(r0), and f decreases in the count
            double alpha = std::numeric_limits<double>::infinity();
            double alpha_asymptotic = 0.5 * std::exp(0.5 * ct_t * ct_t);
            for (double u : ub.levels) {
                const LevelProfile p = make_profile(u, ct_t, ct_d);
                const auto r_worst =
                    std::max<std::int64_t>(0, static_cast<std::int64_t>(std::floor(p.r0)));
                const Claim4Bound b =
                    claim4_bound_for_count(std::min(r_worst, ct_d), p, default_s_cap(p));
                alpha = std::min(alpha, b.value);
            }
            const std::optional<std::int64_t> R =
                ct_R > 0 ? std::optional<std::int64_t>(ct_R) : std::nullopt;
            const BoundCertificate cert = assemble_certificate(
                ct_d, alpha, ub.lower, R, Provenance::closed_form, Provenance::exact_binomial);
            nlohmann::json j = nlohmann::json::parse(cert.to_json());
            j["alpha_asymptotic"] = alpha_asymptotic;
            j["union"] = {{"exact_sum", ub.exact_sum},
                          {"pairwise_total", ub.pairwise_total},
                          {"lower", ub.lower},
                          {"closed_form_floor", ub.closed_form_floor}};
            ctx.emit("certificate.json", j.dump(2) + "\n");
            std::cout << "alpha " << fmt_g12(alpha) << " (asymptotic " << fmt_g12(alpha_asymptotic)
                      << ")  superlevel " << fmt_g12(ub.lower) << "  window "
                      << fmt_g12(cert.window_factor) << "  bound " << fmt_g12(cert.bound) << "\n";
        });
    }

    return 2;
}
