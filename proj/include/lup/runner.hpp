#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "lup/report.hpp"

namespace lup {

// Everything a run needs; a run is reproducible from its RunConfig alone.
struct RunConfig {
    std::string command = "verify";  // simulate | kernel | verify | limit-scan
    int N = 2;
    int t_max = 3;
    std::vector<int> times;  // record times for simulate
    std::uint64_t trajectories = 20000;
    std::uint64_t seed = 1;
    int workers = 1;
    std::string format = "csv";  // csv | json
    std::string out;
    std::vector<std::string> suites;  // verify subset; empty = all
    std::vector<double> gammas = {100.0, 1000.0, 10000.0};
    double tol = 0.0;  // tolerance override; 0 keeps per-check defaults

    // kernel scan
    std::string family = "sine_extended";
    double kernel_t = 1.0;
    double kernel_s = 1.0;
    double grid_lo = -3.0;
    double grid_hi = 3.0;
    int grid_points = 121;
    double x_ref = 0.0;
    bool diagonal = false;
    double kernel_tol = 1e-6;
};

extern const std::vector<std::string> kAllSuites;

nlohmann::ordered_json config_to_json(const RunConfig& cfg);

// Runs the selected verify suites with deterministic, worker-count
// independent aggregation. Throws on unknown suite names.
std::vector<VerificationReport> run_verify_suites(const RunConfig& cfg);

// {config, results, version}; wall-clock timing is kept out deliberately.
nlohmann::ordered_json verify_report_json(const RunConfig& cfg,
                                          const std::vector<VerificationReport>& reports);

// Shortest round-trip decimal formatting so emitted files diff cleanly.
std::string format_double(double v);

}  // namespace lup
