#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "lup/densities.hpp"
#include "lup/polybasis.hpp"
#include "lup/quadrature.hpp"
#include "lup/rng.hpp"

using namespace lup;

namespace {

double rel_diff(double got, double want) {
    return std::fabs(got - want) / std::max(1e-300, std::fabs(want));
}

// cofactor-expansion determinant oracle for tiny matrices
double det_cofactor(const std::vector<std::vector<double>>& m) {
    const std::size_t n = m.size();
    if (n == 1) return m[0][0];
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::vector<double>> minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<double> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(m[i][k]);
            minor.push_back(row);
        }
        acc += (j % 2 == 0 ? 1.0 : -1.0) * m[0][j] * det_cofactor(minor);
    }
    return acc;
}

}  // namespace

TEST_CASE("vandermonde values and determinant oracle") {
    CHECK(vandermonde(std::vector<double>{1.0, 2.0}).to_double() == doctest::Approx(-1.0));
    CHECK(vandermonde(std::vector<double>{3.0, 3.0, 1.0}).is_zero());
    const std::vector<double> pts = {4.0, 1.0, 2.0};
    std::vector<std::vector<double>> vm(3, std::vector<double>(3));
    for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) vm[k][l] = std::pow(pts[k], l);
    // det[x_k^{l-1}] = prod_{k<l} (x_k - x_l) up to the ordering convention
    const double oracle = det_cofactor(vm);
    const double got = vandermonde(pts).to_double();
    CHECK(rel_diff(std::fabs(got), std::fabs(oracle)) < 1e-13);
    CHECK(got == doctest::Approx((4.0 - 1.0) * (4.0 - 2.0) * (1.0 - 2.0)).epsilon(1e-13));
}

TEST_CASE("log_det with row scaling") {
    RngStream rng(21, 0);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + static_cast<int>(rng.next_uniform() * 4);
        std::vector<std::vector<double>> plain(n, std::vector<double>(n));
        std::vector<std::vector<LogValue>> lv(n, std::vector<LogValue>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                plain[i][j] = -2.0 + 4.0 * rng.next_uniform();
                lv[i][j] = LogValue::from_double(plain[i][j]);
            }
        const double want = det_cofactor(plain);
        const double got = log_det(lv).to_double();
        CHECK(std::fabs(got - want) < 1e-10 * std::max(1.0, std::fabs(want)));
    }
    // wildly scaled rows survive
    std::vector<std::vector<LogValue>> big(2, std::vector<LogValue>(2));
    big[0][0] = LogValue{1, 800.0};
    big[0][1] = LogValue{1, 799.0};
    big[1][0] = LogValue{1, -600.0};
    big[1][1] = LogValue{1, -601.0};
    const LogValue d = log_det(big);
    // det = e^{800} e^{-601} - e^{799} e^{-600} = e^{199}(1 - 1) ... actually
    // e^{199} - e^{199} = 0 exactly in the scaled arithmetic
    CHECK(std::fabs(d.to_double()) < 1e185);
}

TEST_CASE("eig_jpdf closed forms") {
    // N=1 reduces to the weight
    CHECK(rel_diff(eig_jpdf(std::vector<double>{2.0}, 1, 0.0, 1.0).to_double(), std::exp(-2.0)) <
          1e-13);
    CHECK(eig_jpdf(std::vector<double>{-1.0}, 1, 0.0, 1.0).is_zero());
    // N=2, a=0, b=1: (x1-x2)^2 e^{-x1-x2} / 2
    const double x1 = 1.7, x2 = 0.4;
    const double want = (x1 - x2) * (x1 - x2) * std::exp(-x1 - x2) / 2.0;
    CHECK(rel_diff(eig_jpdf(std::vector<double>{x1, x2}, 2, 0.0, 1.0).to_double(), want) < 1e-12);
    CHECK(std::fabs(log_z_laguerre(2, 0.0, 1.0).to_double() - 2.0) < 1e-13);
}

TEST_CASE("eig_jpdf integrates to one (N=2)") {
    const double total = integrate_adaptive_2d(
        [](double x, double y) {
            return eig_jpdf(std::vector<double>{x, y}, 2, 0.0, 1.0).to_double();
        },
        0.0, 45.0, 0.0, 45.0, 1e-9);
    CHECK(std::fabs(total - 1.0) < 1e-8);
}

TEST_CASE("transition density closed forms") {
    // N=1: kappa_1(y-x)
    const double v = transition_density(std::vector<double>{3.0}, std::vector<double>{1.2}, 2, 1, 1)
                         .to_double();
    CHECK(rel_diff(v, std::exp(-(3.0 - 1.2))) < 1e-13);
    CHECK(transition_density(std::vector<double>{0.5}, std::vector<double>{1.2}, 2, 1, 1)
              .is_zero());

    // N=2 worked example with kappa_1(d) = d e^{-d}
    const std::vector<double> y = {5.0, 1.0}, x = {2.0, 0.5};
    auto k1 = [](double d) { return d > 0.0 ? d * std::exp(-d) : 0.0; };
    const double dy = 5.0 - 1.0, dx = 2.0 - 0.5;
    const double det = k1(5.0 - 2.0) * k1(1.0 - 0.5) - k1(5.0 - 0.5) * k1(1.0 - 2.0);
    const double want = 0.5 * (dy / dx) * det;
    CHECK(rel_diff(transition_density(y, x, 2, 1, 2).to_double(), want) < 1e-12);

    CHECK_THROWS_AS(transition_density(y, std::vector<double>{1.0, 1.0}, 2, 1, 2),
                    std::invalid_argument);
    CHECK_THROWS_AS(transition_density(y, x, 1, 1, 2), std::invalid_argument);
    // coincident targets degenerate continuously to zero
    CHECK(transition_density(std::vector<double>{2.0, 2.0}, x, 2, 1, 2).is_zero());
}

TEST_CASE("transition density normalizes over target space") {
    const std::vector<double> x = {2.0, 0.5};
    const double total = integrate_adaptive_2d(
        [&](double y1, double y2) {
            return transition_density(std::vector<double>{y1, y2}, x, 2, 1, 2).to_double();
        },
        0.0, 55.0, 0.0, 55.0, 5e-8);
    CHECK(std::fabs(total - 1.0) < 1e-6);
}

TEST_CASE("permutation invariance") {
    const std::vector<double> y = {5.0, 1.0, 2.5}, x = {2.0, 0.5, 3.3};
    const LogValue base = transition_density(y, x, 3, 1, 3);
    const std::vector<std::vector<double>> yp = {{1.0, 5.0, 2.5}, {2.5, 1.0, 5.0}};
    const std::vector<std::vector<double>> xp = {{0.5, 2.0, 3.3}, {3.3, 2.0, 0.5}};
    for (const auto& yy : yp)
        for (const auto& xx : xp) {
            const LogValue p = transition_density(yy, xx, 3, 1, 3);
            CHECK(p.sign == base.sign);
            CHECK(std::fabs(p.logmag - base.logmag) < 1e-12 * std::max(1.0, std::fabs(base.logmag)));
        }
}

TEST_CASE("spatiotemporal density chains") {
    // single time reduces to eig_jpdf at (N(t-1), 1)
    const std::vector<std::vector<double>> single = {{1.5, 0.7}};
    const std::vector<int> t1 = {3};
    const LogValue a = spatiotemporal_jpdf(single, t1, 2);
    const LogValue b = eig_jpdf(single[0], 2, 4.0, 1.0);
    CHECK(a.sign == b.sign);
    CHECK(std::fabs(a.logmag - b.logmag) < 1e-12 * std::max(1.0, std::fabs(b.logmag)));

    // two times, N=1: w_{t0-1,1}(x0) kappa_{t1-t0}(x1-x0)
    const std::vector<std::vector<double>> chain1 = {{1.1}, {2.9}};
    const std::vector<int> t2 = {2, 4};
    const double got1 = spatiotemporal_jpdf(chain1, t2, 1).to_double();
    const double want1 = weight_gamma(WeightParams(1.0, 1.0), 1.1).to_double() *
                         kappa(2.0, 1, 2.9 - 1.1).to_double();
    CHECK(rel_diff(got1, want1) < 1e-12);

    // two times, N=2: eig_jpdf(x0) * transition(x1 | x0)
    const std::vector<std::vector<double>> chain2 = {{2.0, 0.5}, {5.0, 1.0}};
    const std::vector<int> t3 = {1, 2};
    const double got2 = spatiotemporal_jpdf(chain2, t3, 2).to_double();
    const double want2 = eig_jpdf(chain2[0], 2, 0.0, 1.0).to_double() *
                         transition_density(chain2[1], chain2[0], 2, 1, 2).to_double();
    CHECK(rel_diff(got2, want2) < 1e-12);

    CHECK_THROWS_AS(spatiotemporal_jpdf(chain2, std::vector<int>{2, 2}, 2), std::invalid_argument);
}

TEST_CASE("three-time chain factorizes through transitions") {
    const std::vector<std::vector<double>> chain = {{2.0, 0.5}, {5.0, 1.0}, {9.0, 3.5}};
    const std::vector<int> times = {1, 2, 4};
    const double got = spatiotemporal_jpdf(chain, times, 2).to_double();
    const double want = eig_jpdf(chain[0], 2, 0.0, 1.0).to_double() *
                        transition_density(chain[1], chain[0], 2, 1, 2).to_double() *
                        transition_density(chain[2], chain[1], 4, 2, 2).to_double();
    CHECK(rel_diff(got, want) < 1e-12);
}

TEST_CASE("densities stay finite at long times") {
    // weight index N(t-1) = 87 is far beyond Gamma overflow in doubles
    const std::vector<double> x = {70.0, 95.0, 110.0};
    const std::vector<double> y = {95.0, 120.0, 140.0};
    const LogValue p = transition_density(y, x, 30, 1, 3);
    CHECK(p.sign == 1);
    CHECK(std::isfinite(p.logmag));
    const LogValue q = eig_jpdf(y, 3, 87.0, 1.0);
    CHECK(q.sign == 1);
    CHECK(std::isfinite(q.logmag));
}

TEST_CASE("chapman-kolmogorov composition (N=2)") {
    const std::vector<double> x = {2.0, 0.5};
    const std::vector<std::vector<double>> ys = {{6.0, 2.5}, {8.0, 1.0}, {4.5, 3.5}};
    for (const auto& y : ys) {
        const double direct = transition_density(y, x, 3, 1, 2).to_double();
        const double composed = integrate_adaptive_2d(
            [&](double z1, double z2) {
                if (z1 == z2) return 0.0;
                return transition_density(y, std::vector<double>{z1, z2}, 3, 2, 2).to_double() *
                       transition_density(std::vector<double>{z1, z2}, x, 2, 1, 2).to_double();
            },
            0.0, 40.0, 0.0, 40.0, 1e-9, {x[1], x[0], y[1], y[0]});
        CHECK(rel_diff(composed, direct) < 1e-5);
    }
}

TEST_CASE("marginal consistency (N=2, t=2)") {
    const std::vector<std::vector<double>> ys = {{5.0, 2.0}, {7.0, 1.2}};
    for (const auto& y : ys) {
        const double want = eig_jpdf(y, 2, 2.0, 1.0).to_double();
        const double got = integrate_adaptive_2d(
            [&](double x1, double x2) {
                if (x1 == x2) return 0.0;
                return transition_density(y, std::vector<double>{x1, x2}, 2, 1, 2).to_double() *
                       eig_jpdf(std::vector<double>{x1, x2}, 2, 0.0, 1.0).to_double();
            },
            0.0, 30.0, 0.0, 30.0, 1e-9);
        CHECK(rel_diff(got, want) < 1e-5);
    }
}
