#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "lup/airy.hpp"
#include "lup/kernels.hpp"
#include "lup/polybasis.hpp"
#include "lup/quadrature.hpp"
#include "lup/rng.hpp"

using namespace lup;

namespace {

double rel_diff(double got, double want) {
    return std::fabs(got - want) / std::max(1e-300, std::fabs(want));
}

// finite part of the extended Hermite kernel, assembled from the basis
double hermite_finite_sum(double y, double t, double x, double s, int N) {
    double acc = 0.0;
    const double zy = y / std::sqrt(2.0 * t), zx = x / std::sqrt(2.0 * s);
    for (int k = 0; k < N; ++k) {
        acc += std::pow(t / s, 0.5 * k) * hermite_monic(k, zy).to_double() *
               hermite_monic(k, zx).to_double() / hermite_norm(k).to_double();
    }
    return acc * std::exp(-zx * zx) / std::sqrt(2.0 * s);
}

// pure polynomial part of the extended Laguerre kernel (no kappa term)
double laguerre_pure_sum(double y, int t, double x, int s, int N) {
    if (x <= 0.0) return 0.0;
    const double at = static_cast<double>(N) * (t - 1), as = static_cast<double>(N) * (s - 1);
    double acc = 0.0;
    for (int k = 0; k < N; ++k) {
        acc += laguerre_monic(k, at, y).to_double() * laguerre_monic(k, as, x).to_double() /
               laguerre_norm(k, as).to_double();
    }
    return acc * weight_gamma(WeightParams(as, 1.0), x).to_double();
}

// high-precision Airy reference values
struct AiryRef {
    double x, ai, aip;
};
constexpr AiryRef kAiryTable[] = {
    {-15, 0.27821749087082893, 0.272374204308642021},
    {-12.5, -0.276274561381160248, -0.419331330419505164},
    {-10, 0.0402412384864431907, 0.996265044132790056},
    {-8, -0.0527050503563862026, 0.935560938198306551},
    {-6.5, -0.238020301997115804, -0.674952492513202173},
    {-5, 0.35076100902411432, 0.327192818554443137},
    {-3.5, -0.375533823140431912, -0.343443433454048146},
    {-2, 0.227407428201685576, 0.618259020741691041},
    {-1, 0.535560883292352119, -0.0101605671166452094},
    {-0.5, 0.475728091610539589, -0.204081670339547386},
    {0, 0.355028053887817239, -0.258819403792806798},
    {0.5, 0.23169360648083349, -0.224910532664683893},
    {1, 0.135292416312881416, -0.159147441296793213},
    {2, 0.0349241304232743791, -0.0530903844336536317},
    {3.5, 0.00258409878698963496, -0.00500441396795258283},
    {5, 0.000108344428136074417, -0.000247413890868462476},
    {6, 9.94769436025288957e-6, -2.47652003970349548e-5},
    {7, 7.49212886399716708e-7, -2.00815089473879199e-6},
    {8, 4.69220761609923163e-8, -1.34143929790678657e-7},
    {10, 1.10475325528986859e-10, -3.52063367673892364e-10},
    {15, 2.1649625207379923e-18, -8.42056795401777277e-18},
    {20, 1.69167286867054031e-27, -7.58639162574835496e-27},
    {30, 3.20821759155049557e-49, -1.75987658143272598e-48},
};

}  // namespace

// ---- airy ------------------------------------------------------------------

TEST_CASE("airy closed forms at zero") {
    CHECK(std::fabs(airy_ai(0.0) - std::pow(3.0, -2.0 / 3.0) / std::tgamma(2.0 / 3.0)) < 1e-14);
    CHECK(std::fabs(airy_ai_prime(0.0) + std::pow(3.0, -1.0 / 3.0) / std::tgamma(1.0 / 3.0)) <
          1e-14);
}

TEST_CASE("airy against the reference table") {
    for (const auto& r : kAiryTable) {
        CHECK(std::fabs(airy_ai(r.x) - r.ai) < 1e-10);
        CHECK(std::fabs(airy_ai_prime(r.x) - r.aip) < 1e-10);
    }
    CHECK_THROWS_AS(airy_ai(-15.5), std::domain_error);
    CHECK_THROWS_AS(airy_ai(30.5), std::domain_error);
}

TEST_CASE("airy satisfies the defining ODE") {
    // five-point second difference of Ai minus x Ai
    const double h = 1e-3;
    for (double x = -3.0; x <= 3.01; x += 0.5) {
        const double dd = (-airy_ai(x + 2 * h) + 16.0 * airy_ai(x + h) - 30.0 * airy_ai(x) +
                           16.0 * airy_ai(x - h) - airy_ai(x - 2 * h)) /
                          (12.0 * h * h);
        CHECK(std::fabs(dd - x * airy_ai(x)) < 1e-8);
        // and Ai' consistency via central difference
        const double d1 = (airy_ai(x + h) - airy_ai(x - h)) / (2.0 * h);
        CHECK(std::fabs(d1 - airy_ai_prime(x)) < 1e-6);
    }
}

// ---- laguerre kernel ---------------------------------------------------------

TEST_CASE("laguerre kernel basic values") {
    // N=1 equal time: the Exp(1) intensity
    for (double x : {0.3, 1.0, 2.7}) {
        CHECK(rel_diff(kernel_laguerre({x, 1.0}, {x, 1.0}, 1), std::exp(-x)) < 1e-13);
    }
    // x <= 0 kills the polynomial part
    CHECK(kernel_laguerre({1.0, 1.0}, {-0.5, 1.0}, 2) == 0.0);
    // frozen cross-time point: w_{1,1}(2) - kappa_1(1) = 2e^{-2} - e^{-1}
    CHECK(rel_diff(kernel_laguerre({1.0, 1.0}, {2.0, 2.0}, 1), -0.097208874698216938) < 1e-12);
    CHECK_THROWS_AS(kernel_laguerre({1.0, 1.5}, {1.0, 1.0}, 2), std::invalid_argument);
}

TEST_CASE("indicator discipline on the kappa term") {
    const double y = 1.3, x = 2.1;
    // t > s: no kappa term
    CHECK(rel_diff(kernel_laguerre({y, 2.0}, {x, 1.0}, 2), laguerre_pure_sum(y, 2, x, 1, 2)) <
          1e-12);
    // t = s: no kappa term either (strict inequality)
    CHECK(rel_diff(kernel_laguerre({y, 2.0}, {x, 2.0}, 2), laguerre_pure_sum(y, 2, x, 2, 2)) <
          1e-12);
    // s > t: kappa appears
    const double want = laguerre_pure_sum(y, 1, x, 2, 2) - kappa(1.0, 2, x - y).to_double();
    CHECK(rel_diff(kernel_laguerre({y, 1.0}, {x, 2.0}, 2), want) < 1e-12);
}

TEST_CASE("christoffel-darboux form matches the k-sum") {
    for (int N : {1, 2, 3, 5}) {
        for (int t : {1, 2, 4}) {
            for (double x : {0.4, 1.0, 2.0, 7.5}) {
                for (double y : {0.4, 1.3, 5.0}) {
                    const double cd = kernel_laguerre_cd(y, x, t, N);
                    const double sum = kernel_laguerre({y, double(t)}, {x, double(t)}, N);
                    // near kernel zeros "relative" is against the intrinsic
                    // diagonal scale, not the vanishing value itself
                    const double scale = std::max(
                        std::fabs(sum),
                        std::sqrt(kernel_laguerre({y, double(t)}, {y, double(t)}, N) *
                                  kernel_laguerre({x, double(t)}, {x, double(t)}, N)));
                    CHECK(std::fabs(cd - sum) < 1e-9 * scale);
                }
                // diagonal: derivative form against the k-sum
                const double cd_diag = kernel_laguerre_cd(x, x, t, N);
                const double sum_diag = kernel_laguerre({x, double(t)}, {x, double(t)}, N);
                CHECK(rel_diff(cd_diag, sum_diag) < 1e-9);
            }
        }
    }
    // N=1 reduces to the weight itself
    CHECK(rel_diff(kernel_laguerre_cd(1.7, 1.7, 3, 1),
                   weight_gamma(WeightParams(2.0, 1.0), 1.7).to_double()) < 1e-13);
}

TEST_CASE("equal-time laguerre kernel is a reproducing projection") {
    for (int N : {2, 3}) {
        for (int t : {1, 2}) {
            const double hi = 3.0 * N * t + 40.0;
            const auto rule = gauss_legendre_sqrt(256, hi);
            // trace = N
            double tr = 0.0;
            for (std::size_t i = 0; i < rule.nodes.size(); ++i)
                tr += rule.weights[i] *
                      kernel_laguerre({rule.nodes[i], double(t)}, {rule.nodes[i], double(t)}, N);
            CHECK(std::fabs(tr - N) < 1e-8);
            // reproducing property on a 3x3 grid
            for (double x : {0.5, 2.0, 4.5}) {
                for (double y : {1.0, 3.0, 6.0}) {
                    double conv = 0.0;
                    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
                        const double z = rule.nodes[i];
                        conv += rule.weights[i] *
                                kernel_laguerre({x, double(t)}, {z, double(t)}, N) *
                                kernel_laguerre({z, double(t)}, {y, double(t)}, N);
                    }
                    const double want = kernel_laguerre({x, double(t)}, {y, double(t)}, N);
                    CHECK(std::fabs(conv - want) < 1e-7 * std::max(1.0, std::fabs(want)));
                }
            }
        }
    }
}

TEST_CASE("laguerre kernel deep in the overflow regime") {
    // t = s = 100 puts the weight index at N(t-1) = 198, where Gamma(a+1)
    // and the polynomial magnitudes are far outside double range; only the
    // log-space assembly keeps this finite
    const int N = 2, t = 100;
    const double hi = 3.0 * N * N * t + 60.0;
    const auto rule = gauss_legendre_sqrt(384, hi);
    double tr = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double k =
            kernel_laguerre({rule.nodes[i], double(t)}, {rule.nodes[i], double(t)}, N);
        CHECK(std::isfinite(k));
        CHECK(k >= -1e-12);
        tr += rule.weights[i] * k;
    }
    CHECK(std::fabs(tr - N) < 1e-8);
    for (double x : {360.0, 400.0, 430.0}) {
        for (double y : {380.0, 405.0}) {
            const double cd = kernel_laguerre_cd(y, x, t, N);
            const double sum = kernel_laguerre({y, double(t)}, {x, double(t)}, N);
            const double scale =
                std::max(std::fabs(sum),
                         std::sqrt(kernel_laguerre({y, double(t)}, {y, double(t)}, N) *
                                   kernel_laguerre({x, double(t)}, {x, double(t)}, N)));
            CHECK(std::fabs(cd - sum) < 1e-9 * scale);
        }
    }
}

// ---- hermite kernel ---------------------------------------------------------

TEST_CASE("hermite kernel diagonal at N=1 is the gaussian density") {
    for (double s : {0.5, 1.0, 3.0}) {
        for (double x : {-1.0, 0.0, 0.8}) {
            const double want = std::exp(-x * x / (2.0 * s)) / std::sqrt(2.0 * M_PI * s);
            CHECK(rel_diff(kernel_hermite({x, s}, {x, s}, 1, 1e-10), want) < 1e-12);
        }
    }
}

TEST_CASE("mehler resummation of the s > t branch") {
    const double y = 0.3, x = -0.4, t = 1.0, s = 2.0;
    const double heat =
        std::exp(-(y - x) * (y - x) / (2.0 * (s - t))) / std::sqrt(2.0 * M_PI * (s - t));
    // frozen closed form
    CHECK(rel_diff(heat, 0.31225393336676126) < 1e-14);
    for (int N : {1, 3, 6}) {
        const double finite = hermite_finite_sum(y, t, x, s, N);
        const double tail = -kernel_hermite({y, t}, {x, s}, N, 1e-12);
        CHECK(std::fabs(finite + tail - heat) < 1e-10);
    }
}

TEST_CASE("mehler terms decay geometrically at sqrt(t/s)") {
    const double y = 0.3, x = -0.4, t = 1.0, s = 2.0;
    const double zy = y / std::sqrt(2.0 * t), zx = x / std::sqrt(2.0 * s);
    std::vector<double> mags;
    for (int k = 20; k < 60; ++k) {
        const double term = std::pow(t / s, 0.5 * k) * hermite_monic(k, zy).to_double() *
                            hermite_monic(k, zx).to_double() / hermite_norm(k).to_double();
        mags.push_back(std::fabs(term));
    }
    double lo = 0.0, hi = 0.0;
    for (int i = 0; i < 20; ++i) {
        lo += mags[i];
        hi += mags[20 + i];
    }
    const double ratio = std::pow(hi / lo, 1.0 / 20.0);
    CHECK(ratio > 0.9 * std::sqrt(t / s));
    CHECK(ratio < 1.1 * std::sqrt(t / s));
}

TEST_CASE("hermite kernel trace and positivity") {
    const auto rule = gauss_legendre(512, -30.0, 30.0);
    double tr = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double k = kernel_hermite({rule.nodes[i], 1.0}, {rule.nodes[i], 1.0}, 2, 1e-10);
        CHECK(k >= -1e-14);
        tr += rule.weights[i] * k;
    }
    CHECK(std::fabs(tr - 2.0) < 1e-8);
    for (double x = -4.0; x <= 4.0; x += 0.5) {
        CHECK(kernel_hermite({x, 2.0}, {x, 2.0}, 5, 1e-10) >= 0.0);
    }
}

TEST_CASE("hermite tail cap reports failure when t/s is too close to one") {
    CHECK_THROWS_AS(kernel_hermite({0.1, 1.0}, {0.2, 1.0 + 1e-9}, 2, 1e-12), std::runtime_error);
}

// ---- sine kernel --------------------------------------------------------------

TEST_CASE("sine kernel equal-time reduction") {
    for (double d : {0.25, 0.5, 1.0, 2.5}) {
        const double got = kernel_sine({d, 1.0}, {0.0, 1.0}, 1e-10);
        CHECK(std::fabs(got - std::sin(M_PI * d) / (M_PI * d)) < 1e-8);
    }
    CHECK(std::fabs(kernel_sine({0.7, 2.0}, {0.7, 2.0}, 1e-10) - 1.0) < 1e-10);
}

TEST_CASE("sine kernel s > t branch against a dense quadrature oracle") {
    const double d = 0.5, dt = 0.2;
    const double c = M_PI * M_PI * dt;
    double umax = 1.0;
    while (std::exp(-c * umax * umax) / (2.0 * c * umax) > 1e-14) umax *= 1.5;
    const auto rule = gauss_legendre(2000, 1.0, umax);
    const double oracle =
        -rule.integrate([&](double u) { return std::exp(-c * u * u) * std::cos(M_PI * u * d); });
    CHECK(std::fabs(kernel_sine({0.0, 1.0}, {d, 1.0 + dt}, 1e-10) - oracle) < 1e-10);
}

// ---- airy kernel ---------------------------------------------------------------

TEST_CASE("airy kernel equal-time reduction") {
    const double y = 0.5, x = -0.3;
    const double cd =
        (airy_ai(y) * airy_ai_prime(x) - airy_ai_prime(y) * airy_ai(x)) / (y - x);
    CHECK(std::fabs(kernel_airy({y, 1.0}, {x, 1.0}, 1e-10) - cd) < 1e-8);
    // confluent diagonal at zero: Ai'(0)^2 since Ai''(0) = 0
    const double want = airy_ai_prime(0.0) * airy_ai_prime(0.0);
    CHECK(std::fabs(kernel_airy({0.0, 1.0}, {0.0, 1.0}, 1e-10) - want) < 1e-8);
}

TEST_CASE("airy kernel s <= t branch against a dense quadrature oracle") {
    const double y = 1.0, x = 1.0, t = 2.0, s = 1.0;
    const auto rule = gauss_legendre(2000, 0.0, 29.0);
    const double oracle = rule.integrate(
        [&](double u) { return std::exp(0.5 * u * (s - t)) * airy_ai(y + u) * airy_ai(x + u); });
    CHECK(std::fabs(kernel_airy({y, t}, {x, s}, 1e-9) - oracle) < 1e-9);
}

TEST_CASE("airy kernel s > t branch converges at loose tolerance only") {
    const double oracle = [&] {
        // same truncation the kernel itself is allowed: arguments >= -15
        const auto rule = gauss_legendre(2000, -14.7, 0.0);
        return -rule.integrate([&](double u) {
            return std::exp(0.5 * u * 1.0) * airy_ai(0.5 + u) * airy_ai(-0.3 + u);
        });
    }();
    const double got = kernel_airy({0.5, 1.0}, {-0.3, 2.0}, 1e-3);
    CHECK(std::fabs(got - oracle) < 1e-3);
    CHECK_THROWS_AS(kernel_airy({0.5, 1.0}, {-0.3, 2.0}, 1e-9), std::runtime_error);
    CHECK_THROWS_AS(kernel_airy({40.0, 1.0}, {0.0, 1.0}, 1e-6), std::domain_error);
}

// ---- correlation determinants ---------------------------------------------------

TEST_CASE("correlation_det basics") {
    const KernelSpec spec(KernelFamily::laguerre_extended, 2, 1e-6);
    const SpaceTimePoint p{1.3, 1.0};
    CHECK(correlation_det(std::vector<SpaceTimePoint>{p}, spec) ==
          doctest::Approx(kernel_laguerre(p, p, 2)).epsilon(1e-14));
    // two equal-time points at N=2, t=1: closed-form pair correlation
    for (auto [x1, x2] : {std::pair{0.7, 2.0}, {1.0, 3.5}, {0.2, 0.9}}) {
        const double want = (x1 - x2) * (x1 - x2) * std::exp(-x1 - x2);
        const double got = correlation_det(
            std::vector<SpaceTimePoint>{{x1, 1.0}, {x2, 1.0}}, spec);
        CHECK(rel_diff(got, want) < 1e-10);
    }
    CHECK_THROWS_AS(correlation_det(std::vector<SpaceTimePoint>{}, spec), std::invalid_argument);
    CHECK_THROWS_AS(KernelSpec(KernelFamily::sine_extended, 1, 0.5), std::invalid_argument);
}

TEST_CASE("correlation determinants are gauge invariant") {
    const KernelSpec spec(KernelFamily::laguerre_extended, 2, 1e-6);
    const std::vector<SpaceTimePoint> pts = {{1.1, 1.0}, {2.3, 2.0}, {0.6, 3.0}};
    const double base = correlation_det(pts, spec);
    RngStream rng(31, 0);
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<double> g(pts.size());
        for (auto& v : g) v = std::exp(-1.0 + 2.0 * rng.next_uniform());
        std::vector<std::vector<double>> m(pts.size(), std::vector<double>(pts.size()));
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t j = 0; j < pts.size(); ++j)
                m[i][j] = g[i] / g[j] * kernel_laguerre(pts[i], pts[j], 2);
        // 3x3 determinant of the gauged matrix
        const double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        CHECK(rel_diff(det, base) < 1e-11);
        // pairwise products K(p|q) K(q|p) are gauge invariant too
        const double pair_base = kernel_laguerre(pts[0], pts[1], 2) *
                                 kernel_laguerre(pts[1], pts[0], 2);
        CHECK(rel_diff(m[0][1] * m[1][0], pair_base) < 1e-11);
    }
}
