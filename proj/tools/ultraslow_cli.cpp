#include <cstdio>
#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "ultraslow/calculus.hpp"
#include "ultraslow/green.hpp"
#include "ultraslow/io.hpp"
#include "ultraslow/relaxation.hpp"
#include "ultraslow/solver.hpp"
#include "ultraslow/verify.hpp"

using namespace ultraslow;

namespace {

struct Common {
    std::string config_path;
    std::string out;
    double tol_scale = 0.0;  // 0: keep the config value
    bool hard_asymptotics = false;
};

RunConfig resolve(const Common& c) {
    RunConfig cfg = c.config_path.empty() ? RunConfig{} : load_config(c.config_path);
    if (!c.out.empty()) cfg.out = c.out;
    if (c.tol_scale > 0.0) cfg.tol_scale = c.tol_scale;
    if (c.hard_asymptotics) cfg.hard_asymptotics = true;
    std::filesystem::create_directories(cfg.out);
    return cfg;
}

std::string path_in(const RunConfig& cfg, const std::string& name) {
    return (std::filesystem::path(cfg.out) / name).string();
}

json header(const RunConfig& cfg, const std::string& command) {
    return {{"command", command},
            {"version", kVersion},
            {"weight", weight_to_json(cfg.weight)},
            {"tolerances", {{"rtol", cfg.rtol}, {"tol_scale", cfg.tol_scale}}},
            {"config", config_to_json(cfg)}};
}

std::function<double(const Point&)> initial_datum(const std::string& name) {
    if (name == "one") return [](const Point&) { return 1.0; };
    if (name == "zero") return [](const Point&) { return 0.0; };
    return [](const Point& x) { return std::exp(-0.5 * x.squaredNorm()); };
}

int cmd_kernel(const RunConfig& cfg) {
    const KernelSet ks(cfg.weight, cfg.rtol);
    std::vector<std::vector<double>> rows;
    bool k_ok = true, kappa_ok = true;
    double prev = 1e300;
    for (double s : cfg.s_grid.points()) {
        const double k = ks.k(s);
        k_ok = k_ok && k > 0.0 && k < prev;
        prev = k;
        rows.push_back({s, k, ks.k_prime(s)});
    }
    write_csv(path_in(cfg, "kernel_k.csv"), {"s", "k", "k_prime"}, rows);
    rows.clear();
    prev = 1e300;
    for (double t : cfg.t_grid.points()) {
        const auto e = ks.kappa(t);
        kappa_ok = kappa_ok && e.value < prev;
        prev = e.value;
        rows.push_back({t, e.value, e.error});
    }
    write_csv(path_in(cfg, "kernel_kappa.csv"), {"t", "kappa", "err"}, rows);
    auto j = header(cfg, "kernel");
    j["k_positive_decreasing"] = k_ok;
    j["kappa_decreasing"] = kappa_ok;
    write_json(path_in(cfg, "kernel.json"), j);
    std::printf("kernel: %zu s-points, %zu t-points -> %s\n", cfg.s_grid.points().size(),
                cfg.t_grid.points().size(), cfg.out.c_str());
    return 0;
}

int cmd_relax(const RunConfig& cfg) {
    const KernelSet ks(cfg.weight, cfg.rtol);
    std::vector<RelaxationProblem> probs;
    std::vector<std::string> head{"t"};
    for (double lam : cfg.lambdas) {
        probs.emplace_back(ks, lam);
        char buf[48];
        std::snprintf(buf, sizeof buf, "u_lambda=%g", lam);
        head.push_back(buf);
    }
    std::vector<std::vector<double>> rows;
    for (double t : cfg.t_grid.points()) {
        std::vector<double> row{t};
        for (const auto& p : probs) row.push_back(u_lambda(p, t).value);
        rows.push_back(std::move(row));
    }
    write_csv(path_in(cfg, "relax.csv"), head, rows);
    write_json(path_in(cfg, "relax.json"), header(cfg, "relax"));
    std::printf("relax: %zu lambdas x %zu t-points -> %s\n", probs.size(), rows.size(),
                cfg.out.c_str());
    return 0;
}

int cmd_green(const RunConfig& cfg) {
    const KernelSet ks(cfg.weight, cfg.rtol);
    const int n = cfg.dim;
    std::vector<std::vector<double>> rows;
    json summary = header(cfg, "green");
    summary["per_t"] = json::array();
    for (double t : cfg.t_grid.points()) {
        const ContourGreen cg(ks, t);
        const SubordinationDensity g(ks, t);
        for (double x : cfg.x_grid.points()) {
            const auto z = cg.z(n, x);
            rows.push_back({t, x, z.value, z.error, z_subordinate(g, n, x).value, cg.e(n, x).value});
        }
        const auto mass = z_mass(ks, n, t);
        const auto m = msd(ks, n, t);
        json entry = {{"t", t},
                      {"normalization", mass.value},
                      {"normalization_error", std::abs(mass.value - 1.0)},
                      {"g_mass", g_mass(g).value},
                      {"msd", m.value},
                      {"msd_over_log_t", t > 1.0 ? m.value / std::log(t) : 0.0}};
        if (n == 1) entry["z_at_origin"] = z_at_origin(ks, t).value;
        summary["per_t"].push_back(entry);
    }
    write_csv(path_in(cfg, "green.csv"), {"t", "x", "Z", "err", "Z_subord", "E"}, rows);
    json trend = json::array();
    for (double t : {1e2, 1e3, 1e4, 1e5, 1e6}) {
        const double m = msd(ks, n, t).value;
        trend.push_back({{"t", t}, {"msd", m}, {"msd_over_log_t", m / std::log(t)}});
    }
    summary["msd_trend"] = trend;
    write_json(path_in(cfg, "green.json"), summary);
    std::printf("green: n = %d, %zu rows -> %s\n", n, rows.size(), cfg.out.c_str());
    return 0;
}

int cmd_solve(const RunConfig& cfg) {
    if (cfg.dim != 1) throw ConfigError("solve: the finite-difference scheme is one-dimensional");
    CauchyProblem prob(KernelSet(cfg.weight, cfg.rtol), 1, initial_datum(cfg.initial), cfg.fd.T);
    const auto field = solve_fd(prob, cfg.fd);
    {
        std::FILE* f = std::fopen(path_in(cfg, "field.csv").c_str(), "wb");
        if (!f) throw ConfigError("cannot write field.csv");
        const auto text = field_to_csv(field);
        std::fwrite(text.data(), 1, text.size(), f);
        std::fclose(f);
    }
    std::vector<Point> xs;
    for (double x : cfg.x_grid.points()) xs.push_back(Point::Constant(1, x));
    const auto u = solve_homogeneous(prob, cfg.fd.T, xs);
    double diff = 0.0;
    json cmp = json::array();
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double fd = field.at(cfg.fd.nt, xs[i][0]);
        diff = std::max(diff, std::abs(fd - u[i].value));
        cmp.push_back({{"x", xs[i][0]}, {"fd", fd}, {"green", u[i].value}, {"err", u[i].error}});
    }
    auto j = header(cfg, "solve");
    j["grid"] = {{"L", cfg.fd.L}, {"nx", cfg.fd.nx}, {"T", cfg.fd.T}, {"nt", cfg.fd.nt}};
    j["initial"] = cfg.initial;
    j["final_time_comparison"] = cmp;
    j["max_fd_vs_green"] = diff;
    write_json(path_in(cfg, "solve.json"), j);
    std::printf("solve: %d x %d field, max |FD - Green| at T = %.3e -> %s\n", cfg.fd.nt + 1,
                cfg.fd.nx, diff, cfg.out.c_str());
    return 0;
}

int cmd_verify(const RunConfig& cfg, const std::vector<int>& ids, bool reference) {
    const VerifyOptions opts{cfg.tol_scale, cfg.hard_asymptotics};
    const auto weights = reference ? reference_weights() : std::vector<Weight>{cfg.weight};
    std::vector<CheckResult> results;
    for (int id : ids.empty() ? std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14}
                              : ids) {
        results.push_back(run_check(id, weights, opts));
        std::printf("%s\n", format_line(results.back()).c_str());
        std::fflush(stdout);
    }
    write_json(path_in(cfg, "verify.json"), report_json(results, weights, opts));
    const bool ok = !has_hard_failure(results);
    std::printf("verify: %s\n", ok ? "all hard checks passed" : "hard check failures");
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Distributed-order diffusion: kernels, relaxation, Green functions, solvers"};
    app.require_subcommand(1);
    Common common;
    app.add_option("--config", common.config_path, "JSON run configuration")
        ->check(CLI::ExistingFile);
    app.add_option("--out", common.out, "Output directory (overrides the config)");
    app.add_option("--tol-scale", common.tol_scale, "Multiply every tolerance")
        ->check(CLI::PositiveNumber);
    app.add_flag("--hard-asymptotics", common.hard_asymptotics,
                 "Treat asymptotic trend checks as hard failures");

    auto* kernel = app.add_subcommand("kernel", "Tabulate k, k' and kappa");
    auto* relax = app.add_subcommand("relax", "Tabulate u_lambda");
    auto* green = app.add_subcommand("green", "Tabulate Z, E and the subordination mixture");
    auto* solve = app.add_subcommand("solve", "Finite-difference Cauchy solve with a Green cross-check");
    auto* verify = app.add_subcommand("verify", "Run the acceptance checks");
    std::vector<int> ids;
    bool reference = false;
    verify->add_option("--checks", ids, "Check ids to run (default: all)")->check(CLI::Range(1, kCheckCount));
    verify->add_flag("--reference", reference, "Use both reference weights instead of the config weight");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const RunConfig cfg = resolve(common);
        if (*kernel) return cmd_kernel(cfg);
        if (*relax) return cmd_relax(cfg);
        if (*green) return cmd_green(cfg);
        if (*solve) return cmd_solve(cfg);
        if (*verify) return cmd_verify(cfg, ids, reference);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
