#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lup/kernels.hpp"
#include "lup/runner.hpp"
#include "lup/special.hpp"
#include "lup/verify.hpp"

using namespace lup;

TEST_CASE("moment closed form spot values") {
    // direct substitutions of the gamma-ratio formula
    auto closed = [](int N, int t, int s, int k, int l) {
        const double as = N * (s - 1.0), at = N * (t - 1.0);
        return std::exp(log_gamma(as + l + 1.0) - log_gamma(as + 1.0) +
                        log_gamma(at + k + l + 1.0) - log_gamma(at + l + 1.0));
    };
    CHECK(closed(2, 4, 2, 0, 0) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(closed(1, 2, 1, 1, 1) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(closed(2, 3, 2, 1, 1) == doctest::Approx(18.0).epsilon(1e-12));
}

TEST_CASE("check_moments quadrature and monte carlo agree with the closed form") {
    const auto rq = check_moments(2, 3, 2, 6, MomentMethod::quadrature, 0, 1e-6, 1, 2);
    CHECK(rq.passed);
    CHECK(rq.observed_error < 1e-10);
    const auto rm = check_moments(2, 3, 2, 4, MomentMethod::monte_carlo, 200000, 0.0, 1, 2);
    CHECK(rm.passed);
    CHECK_THROWS_AS(check_moments(2, 2, 2, 4, MomentMethod::quadrature, 0, 1e-6, 1, 1),
                    std::invalid_argument);
}

TEST_CASE("check_moment_determinant is exact at desk scale") {
    for (int N : {1, 2, 3}) {
        for (auto [t, s] : {std::pair{2, 1}, {3, 2}, {5, 1}}) {
            const auto r = check_moment_determinant(N, t, s, 6, 1e-8);
            CHECK(r.passed);
            CHECK(r.observed_error < 1e-12);
        }
    }
    CHECK_THROWS_AS(check_moment_determinant(2, 3, 2, 9, 1e-8), std::invalid_argument);
}

TEST_CASE("check_biorthogonality base and intermediate times") {
    const auto base = check_biorthogonality(2, 4, 2, 8, std::nullopt, 1e-7, 1e-8);
    CHECK(base.passed);
    for (int u : {2, 3, 4}) {
        const auto r = check_biorthogonality(2, 4, 2, 8, u, 1e-7, 1e-8);
        CHECK(r.passed);
    }
    CHECK_THROWS_AS(check_biorthogonality(2, 4, 2, 8, 5, 1e-7, 1e-8), std::invalid_argument);
}

TEST_CASE("check_kappa_convolution") {
    const auto r = check_kappa_convolution(1e-9);
    CHECK(r.passed);
    CHECK(r.observed_error < 1e-12);
}

TEST_CASE("check_sum_property at reduced pair counts") {
    CHECK(check_sum_property(1, 0, 0, 1.0, 20000, 11, 4).passed);
    CHECK(check_sum_property(3, 1, 2, 1.0, 20000, 11, 4).passed);
    CHECK_THROWS_AS(check_sum_property(1, 0, 0, 1.0, 10, 1, 1), std::invalid_argument);
}

TEST_CASE("estimate_correlations_mc modes") {
    // scalar case: the 1-point intensity is the Exp(1) density
    const auto r1 = estimate_correlations_mc(1, {1}, 100000, 40, 11, 4);
    CHECK(r1.passed);
    const auto r2 = estimate_correlations_mc(2, {1, 1}, 30000, 10, 11, 4);
    CHECK(r2.passed);
    const auto r3 = estimate_correlations_mc(2, {1, 2}, 30000, 10, 11, 4);
    CHECK(r3.passed);
    CHECK_THROWS_AS(estimate_correlations_mc(2, {1}, 100, 40, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(estimate_correlations_mc(5, {1}, 20000, 40, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(estimate_correlations_mc(2, {2, 1}, 20000, 40, 1, 1), std::invalid_argument);
}

TEST_CASE("scaled laguerre kernel approaches the gaussian value") {
    // N=1, equal time, origin: limit value is 1/sqrt(2 pi)
    const double g = 1e4;
    const double scaled = std::sqrt(g) * kernel_laguerre({g, g}, {g, g}, 1);
    CHECK(std::fabs(scaled - 1.0 / std::sqrt(2.0 * M_PI)) < 1e-2);
}

TEST_CASE("check_scaling_limit slope and guards") {
    const std::vector<ScalePoint> pts = {{0.5, -0.3, 1, 1}, {0.3, 0.5, 2, 1}, {0.2, -0.1, 1, 2}};
    for (int N : {1, 2}) {
        const auto r = check_scaling_limit(N, {100.0, 1000.0, 10000.0}, pts);
        CHECK(r.passed);
        const double slope = std::stod(r.params.at("slope"));
        CHECK(slope > -0.7);
        CHECK(slope < -0.3);
        CHECK(r.params.at("monotone") == "true");
    }
    CHECK_THROWS_AS(check_scaling_limit(2, {1e6, 1e7}, pts), std::runtime_error);
    CHECK_THROWS_AS(check_scaling_limit(2, {1000.0, 100.0}, pts), std::invalid_argument);
}

TEST_CASE("check_lemma_limits all three kinds") {
    const std::vector<double> as = {1e3, 1e5, 1e7};
    for (auto kind : {LemmaKind::L2H, LemmaKind::norm, LemmaKind::weight}) {
        const auto r = check_lemma_limits(kind, as, 1e-2);
        CHECK(r.passed);
        CHECK(r.params.at("monotone") == "true");
        CHECK(std::stod(r.params.at("final_error")) < 1e-2);
    }
    CHECK_THROWS_AS(check_lemma_limits(LemmaKind::norm, {1e3, 1e9}, 1e-2),
                    std::invalid_argument);
}

TEST_CASE("reports are bit-reproducible and worker-count independent") {
    const auto a = check_sum_property(2, 0, 0, 1.0, 20000, 7, 1);
    const auto b = check_sum_property(2, 0, 0, 1.0, 20000, 7, 8);
    CHECK(a.observed_error == b.observed_error);
    CHECK(a.params.at("ks_trace") == b.params.at("ks_trace"));
    const auto c = estimate_correlations_mc(2, {1}, 20000, 40, 5, 1);
    const auto d = estimate_correlations_mc(2, {1}, 20000, 40, 5, 6);
    CHECK(c.observed_error == d.observed_error);
    const auto e = check_moments(1, 2, 1, 4, MomentMethod::monte_carlo, 100000, 0.0, 9, 1);
    const auto f = check_moments(1, 2, 1, 4, MomentMethod::monte_carlo, 100000, 0.0, 9, 8);
    CHECK(e.observed_error == f.observed_error);
}

TEST_CASE("runner suite selection and tolerance override") {
    RunConfig cfg;
    cfg.suites = {"convolution", "determinant"};
    cfg.workers = 2;
    const auto reports = run_verify_suites(cfg);
    CHECK(reports.size() == 10);
    for (const auto& r : reports) CHECK(r.passed);
    cfg.tol = 1e-30;
    const auto broken = run_verify_suites(cfg);
    bool any_failed = false;
    for (const auto& r : broken) any_failed |= !r.passed;
    CHECK(any_failed);
    cfg.suites = {"nonsense"};
    CHECK_THROWS_AS(run_verify_suites(cfg), std::invalid_argument);
}

TEST_CASE("report invariant and serialization") {
    const auto r = make_report("demo", {{"p", "1"}}, 0.5, 1.0, 10, 0.1);
    CHECK(r.passed);
    const auto j = report_to_json(r);
    CHECK(j["identity"] == "demo");
    CHECK(!j.contains("wall_time"));
    const auto bad = make_report("demo", {}, 2.0, 1.0, 10, 0.1);
    CHECK(!bad.passed);
}
