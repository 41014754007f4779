// Command-line front end: simulate the matrix process, tabulate kernels,
// run the verification suites, scan the long-time kernel limit.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <vector>

#include "lup/kernels.hpp"
#include "lup/parallel.hpp"
#include "lup/process.hpp"
#include "lup/rng.hpp"
#include "lup/runner.hpp"
#include "lup/verify.hpp"
#include "lup/version.hpp"

using namespace lup;

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write output file: " + path);
    return f;
}

void write_meta(std::ostream& os, const RunConfig& cfg) {
    os << "# lup " << cfg.command << "\n";
    os << "# version: " << kVersion << "\n";
    os << "# seed: " << cfg.seed << "\n";
    os << "# config: " << config_to_json(cfg).dump() << "\n";
}

int cmd_simulate(const RunConfig& cfg) {
    std::vector<int> record = cfg.times;
    if (record.empty())
        for (int t = 1; t <= cfg.t_max; ++t) record.push_back(t);

    struct Row {
        std::vector<std::vector<double>> eigs;  // per recorded time
    };
    std::vector<Row> rows(cfg.trajectories);
    parallel_for(cfg.trajectories, cfg.workers, [&](std::size_t i) {
        RngStream rng(cfg.seed, i);  // one stream per trajectory, id = index
        const auto traj = simulate_lup(cfg.N, cfg.t_max, record, rng);
        rows[i].eigs = traj.eigen_cache;
    });

    auto out = open_out(cfg.out.empty() ? "simulate.out" : cfg.out);
    if (cfg.format == "json") {
        nlohmann::ordered_json j;
        j["config"] = config_to_json(cfg);
        j["results"] = nlohmann::ordered_json::array();
        for (std::size_t i = 0; i < rows.size(); ++i) {
            for (std::size_t k = 0; k < record.size(); ++k) {
                nlohmann::ordered_json rec;
                rec["trajectory_id"] = i;
                rec["time"] = record[k];
                rec["eigenvalues"] = rows[i].eigs[k];
                j["results"].push_back(std::move(rec));
            }
        }
        j["version"] = kVersion;
        out << j.dump(2) << "\n";
    } else {
        write_meta(out, cfg);
        out << "trajectory_id,time,eigenvalue_index,value\n";
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t k = 0; k < record.size(); ++k)
                for (int e = 0; e < cfg.N; ++e)
                    out << i << ',' << record[k] << ',' << e << ','
                        << format_double(rows[i].eigs[k][e]) << "\n";
    }
    return 0;
}

int cmd_kernel(const RunConfig& cfg) {
    KernelFamily family;
    if (cfg.family == "laguerre_extended")
        family = KernelFamily::laguerre_extended;
    else if (cfg.family == "hermite_extended")
        family = KernelFamily::hermite_extended;
    else if (cfg.family == "sine_extended")
        family = KernelFamily::sine_extended;
    else if (cfg.family == "airy_extended")
        family = KernelFamily::airy_extended;
    else
        throw std::invalid_argument("unknown kernel family: " + cfg.family);
    const KernelSpec spec(family, cfg.N, cfg.kernel_tol);

    struct Row {
        double y, t, x, s, k;
    };
    std::vector<Row> rows;
    const int n = std::max(2, cfg.grid_points);
    for (int i = 0; i < n; ++i) {
        const double g = cfg.grid_lo + (cfg.grid_hi - cfg.grid_lo) * i / (n - 1);
        const double y = cfg.diagonal ? g : cfg.x_ref + g;
        const double x = cfg.diagonal ? g : cfg.x_ref;
        const SpaceTimePoint py{y, cfg.kernel_t}, px{x, cfg.kernel_s};
        rows.push_back({y, cfg.kernel_t, x, cfg.kernel_s, kernel_eval(spec, py, px)});
    }

    auto out = open_out(cfg.out.empty() ? "kernel.out" : cfg.out);
    if (cfg.format == "json") {
        nlohmann::ordered_json j;
        j["config"] = config_to_json(cfg);
        j["results"] = nlohmann::ordered_json::array();
        for (const auto& r : rows)
            j["results"].push_back({{"y", r.y}, {"t", r.t}, {"x", r.x}, {"s", r.s}, {"K", r.k}});
        j["version"] = kVersion;
        out << j.dump(2) << "\n";
    } else {
        write_meta(out, cfg);
        out << "# y t x s K\n";
        for (const auto& r : rows)
            out << format_double(r.y) << ' ' << format_double(r.t) << ' ' << format_double(r.x)
                << ' ' << format_double(r.s) << ' ' << format_double(r.k) << "\n";
    }
    return 0;
}

int cmd_verify(const RunConfig& cfg) {
    const auto reports = run_verify_suites(cfg);
    bool all_passed = true;
    for (const auto& r : reports) {
        all_passed &= r.passed;
        std::printf("[%s] %-28s observed=%-12.5g tol=%-10.5g effort=%-9llu (%.2fs)\n",
                    r.passed ? "PASS" : "FAIL", r.identity.c_str(), r.observed_error,
                    r.tolerance, static_cast<unsigned long long>(r.effort), r.wall_time);
    }
    if (!cfg.out.empty()) {
        auto out = open_out(cfg.out);
        out << verify_report_json(cfg, reports).dump(2) << "\n";
    }
    std::printf("%zu checks, %s\n", reports.size(), all_passed ? "all passed" : "FAILURES");
    return all_passed ? 0 : 1;
}

int cmd_limit_scan(const RunConfig& cfg) {
    if (cfg.gammas.empty()) throw std::invalid_argument("limit-scan needs a nonempty --gamma list");
    const std::vector<ScalePoint> points = {
        {0.5, -0.3, 1, 1}, {0.3, 0.5, 2, 1}, {0.2, -0.1, 1, 2}};
    struct Row {
        double gamma;
        ScalePoint p;
        double err;
    };
    std::vector<Row> rows;
    for (const auto& p : points) {
        const double href = kernel_hermite({p.y, double(p.t)}, {p.x, double(p.s)}, cfg.N, 1e-12);
        for (const double g : cfg.gammas) {
            if (static_cast<double>(cfg.N) * (g * std::max(p.t, p.s) - 1.0) > 1e7)
                throw std::runtime_error("gamma out of the validated log-gamma range");
            const double root = std::sqrt(static_cast<double>(cfg.N) * g);
            const double scaled =
                root * kernel_laguerre({root * p.y + cfg.N * g * p.t, g * p.t},
                                       {root * p.x + cfg.N * g * p.s, g * p.s}, cfg.N);
            rows.push_back({g, p, std::fabs(scaled - href)});
        }
    }
    auto out = open_out(cfg.out.empty() ? "limit_scan.out" : cfg.out);
    if (cfg.format == "json") {
        nlohmann::ordered_json j;
        j["config"] = config_to_json(cfg);
        j["results"] = nlohmann::ordered_json::array();
        for (const auto& r : rows)
            j["results"].push_back({{"gamma", r.gamma},
                                    {"y", r.p.y},
                                    {"x", r.p.x},
                                    {"t", r.p.t},
                                    {"s", r.p.s},
                                    {"error", r.err}});
        j["version"] = kVersion;
        out << j.dump(2) << "\n";
    } else {
        write_meta(out, cfg);
        out << "# gamma y x t s error\n";
        for (const auto& r : rows)
            out << format_double(r.gamma) << ' ' << format_double(r.p.y) << ' '
                << format_double(r.p.x) << ' ' << r.p.t << ' ' << r.p.s << ' '
                << format_double(r.err) << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Laguerre unitary process toolkit"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--n", cfg.N, "matrix dimension N");
        sub->add_option("--t-max", cfg.t_max, "largest process time");
        sub->add_option("--times", cfg.times, "times to record / evaluate");
        sub->add_option("--trajectories", cfg.trajectories, "Monte Carlo trajectory count");
        sub->add_option("--seed", cfg.seed, "base RNG seed");
        sub->add_option("--workers", cfg.workers, "worker thread count");
        sub->add_option("--format", cfg.format, "output format")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--out", cfg.out, "output path");
        sub->add_option("--suite", cfg.suites, "verify suites to run");
        sub->add_option("--gamma", cfg.gammas, "gamma values for the limit scan");
        sub->add_option("--tol", cfg.tol, "tolerance override for verify checks");
    };

    auto* sim = app.add_subcommand("simulate", "sample eigenvalue trajectories");
    add_common(sim);
    auto* ker = app.add_subcommand("kernel", "tabulate a correlation kernel on a grid");
    add_common(ker);
    ker->add_option("--family", cfg.family,
                    "laguerre_extended | hermite_extended | sine_extended | airy_extended");
    ker->add_option("--kernel-t", cfg.kernel_t, "first (row) time");
    ker->add_option("--kernel-s", cfg.kernel_s, "second (column) time");
    ker->add_option("--lo", cfg.grid_lo, "grid start");
    ker->add_option("--hi", cfg.grid_hi, "grid end");
    ker->add_option("--points", cfg.grid_points, "grid point count");
    ker->add_option("--x-ref", cfg.x_ref, "fixed second position for off-diagonal scans");
    ker->add_flag("--diagonal", cfg.diagonal, "scan the kernel diagonal K(g, g)");
    ker->add_option("--kernel-tol", cfg.kernel_tol, "kernel truncation tolerance");
    auto* ver = app.add_subcommand("verify", "run verification suites");
    add_common(ver);
    auto* lim = app.add_subcommand("limit-scan", "scan the long-time kernel limit");
    add_common(lim);

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) {
            cfg.command = "simulate";
            return cmd_simulate(cfg);
        }
        if (ker->parsed()) {
            cfg.command = "kernel";
            return cmd_kernel(cfg);
        }
        if (ver->parsed()) {
            cfg.command = "verify";
            return cmd_verify(cfg);
        }
        cfg.command = "limit-scan";
        return cmd_limit_scan(cfg);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
