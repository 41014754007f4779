#include "lup/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "lup/eigen_jacobi.hpp"
#include "lup/kernels.hpp"
#include "lup/parallel.hpp"
#include "lup/polybasis.hpp"
#include "lup/process.hpp"
#include "lup/quadrature.hpp"
#include "lup/rng.hpp"
#include "lup/sampling.hpp"
#include "lup/special.hpp"
#include "lup/stats.hpp"

namespace lup {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

std::string fmt(int v) { return std::to_string(v); }

// Fixed chunk count making Monte Carlo reductions independent of the worker
// count: chunk c owns its derived stream and a contiguous index range, and
// partial sums are reduced in chunk order.
constexpr std::size_t kChunks = 256;

struct ChunkRange {
    std::uint64_t lo, hi;
};

ChunkRange chunk_range(std::uint64_t n, std::size_t c) {
    return {n * c / kChunks, n * (c + 1) / kChunks};
}

double closed_moment(double as, double at, int k, int l) {
    return std::exp(log_gamma(as + l + 1.0) - log_gamma(as + 1.0) +
                    log_gamma(at + k + l + 1.0) - log_gamma(at + l + 1.0));
}

double closed_h(double as, int l) {
    return std::exp(log_gamma(l + 1.0) + log_gamma(as + l + 1.0) - log_gamma(as + 1.0));
}

// 1-point intensity of the eigenvalue process at integer time t.
double intensity(int N, int t, double x) { return kernel_laguerre_cd(x, x, t, N); }

// Quantile of the normalized 1-point intensity by tabulated trapezoid CDF.
double intensity_quantile(int N, int t, double p) {
    const double hi = static_cast<double>(N) * N * t + 12.0 * std::sqrt(2.0 * N * N * t) + 30.0;
    const int m = 4096;
    std::vector<double> cdf(m + 1, 0.0);
    const double h = hi / m;
    double prev = 0.0;
    for (int i = 1; i <= m; ++i) {
        const double cur = intensity(N, t, i * h) / N;
        cdf[i] = cdf[i - 1] + 0.5 * (prev + cur) * h;
        prev = cur;
    }
    const double target = p * cdf[m];
    const auto it = std::lower_bound(cdf.begin(), cdf.end(), target);
    const int idx = std::max<int>(1, static_cast<int>(it - cdf.begin()));
    const double frac = (target - cdf[idx - 1]) / std::max(1e-300, cdf[idx] - cdf[idx - 1]);
    return (idx - 1 + frac) * h;
}

}  // namespace

// ---------------------------------------------------------------------------
// moments
// ---------------------------------------------------------------------------

VerificationReport check_moments(int N, int t, int s, int k_max, MomentMethod method,
                                 std::uint64_t n_samples, double tol, std::uint64_t seed,
                                 int workers) {
    const auto start = Clock::now();
    if (!(t > s && s > 0)) throw std::invalid_argument("check_moments: need t > s > 0");
    if (k_max < 0 || k_max > 8) throw std::invalid_argument("check_moments: k_max out of range");
    const double as = static_cast<double>(N) * (s - 1);
    const double az = static_cast<double>(N) * (t - s);  // gamma shape of the step
    const double at = static_cast<double>(N) * (t - 1);
    const int kk = k_max + 1;

    std::map<std::string, std::string> params = {
        {"N", fmt(N)}, {"t", fmt(t)}, {"s", fmt(s)}, {"k_max", fmt(k_max)}};

    if (method == MomentMethod::quadrature) {
        const double hix = as + 2.0 * k_max + 40.0 * std::sqrt(as + 2.0 * k_max + 2.0) + 20.0;
        const double hiz = az + k_max + 40.0 * std::sqrt(az + k_max + 1.0) + 20.0;
        const auto rx = gauss_legendre_sqrt(256, hix);
        const auto rz = gauss_legendre_sqrt(256, hiz);
        const std::size_t nx = rx.nodes.size(), nz = rz.nodes.size();
        std::vector<double> wx(nx), wz(nz);
        const WeightParams px(as, 1.0);
        for (std::size_t i = 0; i < nx; ++i)
            wx[i] = rx.weights[i] * weight_gamma(px, rx.nodes[i]).to_double();
        for (std::size_t j = 0; j < nz; ++j)
            wz[j] = rz.weights[j] * kappa(static_cast<double>(t - s), N, rz.nodes[j]).to_double();

        std::vector<double> mom(static_cast<std::size_t>(kk) * kk, 0.0);
        std::vector<double> ypow(kk);
        for (std::size_t i = 0; i < nx; ++i) {
            std::vector<double> sum_k(kk, 0.0);
            for (std::size_t j = 0; j < nz; ++j) {
                const double y = rx.nodes[i] + rz.nodes[j];
                double p = wz[j];
                for (int k = 0; k < kk; ++k) {
                    sum_k[k] += p;
                    p *= y;
                }
            }
            double xl = wx[i];
            for (int l = 0; l < kk; ++l) {
                for (int k = 0; k < kk; ++k) mom[static_cast<std::size_t>(k) * kk + l] += xl * sum_k[k];
                xl *= rx.nodes[i];
            }
        }
        double worst = 0.0;
        for (int k = 0; k < kk; ++k)
            for (int l = 0; l < kk; ++l) {
                const double want = closed_moment(as, at, k, l);
                worst = std::max(worst,
                                 std::fabs(mom[static_cast<std::size_t>(k) * kk + l] - want) /
                                     want);
            }
        params["method"] = "quadrature";
        return make_report("moments", std::move(params), worst, tol, 256 * 256,
                           seconds_since(start));
    }

    // Monte Carlo: X ~ Gamma(as+1, 1), Z ~ Gamma(az, 1), v = (X+Z)^k X^l.
    // Standard errors come from the spread of the 256 batch means, which is
    // far more stable than a raw second moment for these heavy statistics.
    std::vector<std::vector<double>> batch_mean(
        kChunks, std::vector<double>(static_cast<std::size_t>(kk) * kk, 0.0));
    RngStream base(seed, 0x6d6f6d656e74ull);
    parallel_for(kChunks, workers, [&](std::size_t c) {
        auto [lo, hi] = chunk_range(n_samples, c);
        RngStream rng = base.substream(c);
        auto& bm = batch_mean[c];
        std::vector<double> xp(kk), yp(kk);
        for (std::uint64_t i = lo; i < hi; ++i) {
            const double x = sample_gamma(as + 1.0, 1.0, rng);
            const double y = x + sample_gamma(az, 1.0, rng);
            xp[0] = yp[0] = 1.0;
            for (int k = 1; k < kk; ++k) {
                xp[k] = xp[k - 1] * x;
                yp[k] = yp[k - 1] * y;
            }
            for (int k = 0; k < kk; ++k)
                for (int l = 0; l < kk; ++l) bm[static_cast<std::size_t>(k) * kk + l] += yp[k] * xp[l];
        }
        const double count = static_cast<double>(hi - lo);
        for (auto& v : bm) v /= count;
    });
    double worst = 0.0;
    const double c_count = static_cast<double>(kChunks);
    for (int k = 0; k < kk; ++k)
        for (int l = 0; l < kk; ++l) {
            if (k == 0 && l == 0) continue;  // both sides exactly 1
            double mean = 0.0;
            for (const auto& bm : batch_mean) mean += bm[static_cast<std::size_t>(k) * kk + l];
            mean /= c_count;
            double var = 0.0;
            for (const auto& bm : batch_mean) {
                const double d = bm[static_cast<std::size_t>(k) * kk + l] - mean;
                var += d * d;
            }
            var /= (c_count - 1.0);
            const double se = std::sqrt(var / c_count);
            const double want = closed_moment(as, at, k, l);
            worst = std::max(worst, std::fabs(mean - want) / (4.0 * se));
        }
    params["method"] = "monte_carlo";
    params["samples"] = std::to_string(n_samples);
    return make_report("moments", std::move(params), worst, 1.0, n_samples,
                       seconds_since(start));
}

// ---------------------------------------------------------------------------
// moment determinant
// ---------------------------------------------------------------------------

namespace {

// Entries are exact integers: M = prod_{j=1..l}(As+j) prod_{j=l+1..l+k}(At+j).
// Quad precision carries the fraction-free elimination far below the 1e-8
// gate; a double LU sits at ~1e-9 relative here because the matrix condition
// number reaches 2e16.
__float128 moment_exact(long long as, long long at, int k, int l) {
    __float128 v = 1;
    for (int j = 1; j <= l; ++j) v *= as + j;
    for (int j = l + 1; j <= l + k; ++j) v *= at + j;
    return v;
}

__float128 bareiss_det(std::vector<std::vector<__float128>> a) {
    const std::size_t n = a.size();
    __float128 prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) throw std::runtime_error("bareiss_det: zero pivot");
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return a[n - 1][n - 1];
}

}  // namespace

VerificationReport check_moment_determinant(int N, int t, int s, int n_max, double tol) {
    const auto start = Clock::now();
    if (!(t > s && s > 0)) throw std::invalid_argument("check_moment_determinant: need t > s > 0");
    if (n_max < 0 || n_max > 6)
        throw std::invalid_argument("check_moment_determinant: n_max out of range");
    const long long as = static_cast<long long>(N) * (s - 1);
    const long long at = static_cast<long long>(N) * (t - 1);

    double worst = 0.0;
    __float128 d_prev = 1;
    for (int n = 0; n <= n_max; ++n) {
        std::vector<std::vector<__float128>> m(n + 1, std::vector<__float128>(n + 1));
        for (int k = 0; k <= n; ++k)
            for (int l = 0; l <= n; ++l) m[k][l] = moment_exact(as, at, k, l);
        const __float128 det = bareiss_det(std::move(m));
        if (!(det > 0)) throw std::runtime_error("check_moment_determinant: determinant not positive");
        __float128 closed = 1;
        for (int k = 0; k <= n; ++k) {
            for (int j = 1; j <= k; ++j) closed *= j;        // k!
            for (int j = 1; j <= k; ++j) closed *= as + j;   // Gamma ratio
        }
        worst = std::max(worst, std::fabs(static_cast<double>(det / closed - 1)));
        // h_n = D_n / D_{n-1} against the time-free closed form
        const __float128 h = det / d_prev;
        __float128 h_closed = 1;
        for (int j = 1; j <= n; ++j) h_closed *= j;
        for (int j = 1; j <= n; ++j) h_closed *= as + j;
        worst = std::max(worst, std::fabs(static_cast<double>(h / h_closed - 1)));
        d_prev = det;
    }
    return make_report("moment_determinant",
                       {{"N", fmt(N)}, {"t", fmt(t)}, {"s", fmt(s)}, {"n_max", fmt(n_max)}},
                       worst, tol, static_cast<std::uint64_t>(n_max + 1), seconds_since(start));
}

// ---------------------------------------------------------------------------
// bi-orthogonality
// ---------------------------------------------------------------------------

VerificationReport check_biorthogonality(int N, int t, int s, int k_max, std::optional<int> u,
                                         double tol_diag, double tol_off) {
    const auto start = Clock::now();
    if (!(t > s && s > 0)) throw std::invalid_argument("check_biorthogonality: need t > s > 0");
    if (u && (*u < s || *u > t))
        throw std::invalid_argument("check_biorthogonality: need s <= u <= t");
    if (k_max < 0 || k_max > 10)
        throw std::invalid_argument("check_biorthogonality: k_max out of range");
    const double as = static_cast<double>(N) * (s - 1);
    const double at = static_cast<double>(N) * (t - 1);
    const int kk = k_max + 1;
    std::vector<double> gram(static_cast<std::size_t>(kk) * kk, 0.0);
    std::uint64_t effort = 0;

    if (!u) {
        // double integral of Lt_k(x+z) kappa_{t-s}(z) Ls_l(x) w_{as,1}(x)
        const double az = static_cast<double>(N) * (t - s);
        const double hix = as + 2.0 * k_max + 40.0 * std::sqrt(as + 2.0 * k_max + 2.0) + 20.0;
        const double hiz = az + k_max + 40.0 * std::sqrt(az + k_max + 1.0) + 20.0;
        const auto rx = gauss_legendre_sqrt(256, hix);
        const auto rz = gauss_legendre_sqrt(256, hiz);
        const WeightParams pw(as, 1.0);
        const std::size_t nx = rx.nodes.size(), nz = rz.nodes.size();
        std::vector<double> wx(nx), wz(nz);
        for (std::size_t i = 0; i < nx; ++i)
            wx[i] = rx.weights[i] * weight_gamma(pw, rx.nodes[i]).to_double();
        for (std::size_t j = 0; j < nz; ++j)
            wz[j] = rz.weights[j] * kappa(static_cast<double>(t - s), N, rz.nodes[j]).to_double();
        // Ls at the x nodes
        std::vector<std::vector<double>> ls(nx, std::vector<double>(kk));
        for (std::size_t i = 0; i < nx; ++i) {
            double pm1 = 0.0, p0 = 1.0;
            for (int k = 0; k < kk; ++k) {
                ls[i][k] = p0;
                const double p1 = (rx.nodes[i] - (2.0 * k + as + 1.0)) * p0 - k * (k + as) * pm1;
                pm1 = p0;
                p0 = p1;
            }
        }
        std::vector<double> lt(kk);
        for (std::size_t i = 0; i < nx; ++i) {
            for (std::size_t j = 0; j < nz; ++j) {
                const double y = rx.nodes[i] + rz.nodes[j];
                double pm1 = 0.0, p0 = 1.0;
                for (int k = 0; k < kk; ++k) {
                    lt[k] = p0;
                    const double p1 = (y - (2.0 * k + at + 1.0)) * p0 - k * (k + at) * pm1;
                    pm1 = p0;
                    p0 = p1;
                }
                const double wij = wx[i] * wz[j];
                for (int k = 0; k < kk; ++k) {
                    const double a = wij * lt[k];
                    for (int l = 0; l < kk; ++l)
                        gram[static_cast<std::size_t>(k) * kk + l] += a * ls[i][l];
                }
            }
        }
        effort = nx * nz;
    } else {
        // single integral of the transformed families at intermediate time u
        const double au = static_cast<double>(N) * (*u - 1);
        const double hi = au + 2.0 * k_max + 40.0 * std::sqrt(au + 2.0 * k_max + 2.0) + 20.0;
        const auto rule = gauss_legendre_sqrt(256, hi);
        const WeightParams pw(au, 1.0);
        std::vector<double> ratio(kk);
        for (int l = 0; l < kk; ++l)
            ratio[l] = (laguerre_norm(l, as) / laguerre_norm(l, au)).to_double();
        std::vector<double> lv(kk);
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const double x = rule.nodes[i];
            double pm1 = 0.0, p0 = 1.0;
            for (int k = 0; k < kk; ++k) {
                lv[k] = p0;
                const double p1 = (x - (2.0 * k + au + 1.0)) * p0 - k * (k + au) * pm1;
                pm1 = p0;
                p0 = p1;
            }
            const double w = rule.weights[i] * weight_gamma(pw, x).to_double();
            for (int k = 0; k < kk; ++k)
                for (int l = 0; l < kk; ++l)
                    gram[static_cast<std::size_t>(k) * kk + l] += w * lv[k] * lv[l] * ratio[l];
        }
        effort = rule.nodes.size();
    }

    const double h_max = closed_h(as, k_max);
    double diag_rel = 0.0, off_abs = 0.0;
    for (int k = 0; k < kk; ++k)
        for (int l = 0; l < kk; ++l) {
            const double v = gram[static_cast<std::size_t>(k) * kk + l];
            if (k == l)
                diag_rel = std::max(diag_rel, std::fabs(v - closed_h(as, l)) / closed_h(as, l));
            else
                off_abs = std::max(off_abs, std::fabs(v));
        }
    const double observed = std::max(diag_rel / tol_diag, off_abs / (h_max * tol_off));
    std::map<std::string, std::string> params = {{"N", fmt(N)},         {"t", fmt(t)},
                                                 {"s", fmt(s)},         {"k_max", fmt(k_max)},
                                                 {"diag_rel", fmt(diag_rel)}, {"off_abs", fmt(off_abs)},
                                                 {"h_max", fmt(h_max)}};
    if (u) params["u"] = fmt(*u);
    return make_report("biorthogonality", std::move(params), observed, 1.0, effort,
                       seconds_since(start));
}

// ---------------------------------------------------------------------------
// kappa convolution semigroup
// ---------------------------------------------------------------------------

VerificationReport check_kappa_convolution(double tol) {
    const auto start = Clock::now();
    double worst = 0.0;
    std::uint64_t effort = 0;
    for (int N : {1, 2, 3}) {
        for (auto [t, u, s] : {std::array<int, 3>{3, 2, 1}, {5, 4, 1}, {4, 2, 1}}) {
            for (int i = 0; i < 60; ++i) {
                const double d = 0.1 + i * (29.9 / 59.0);
                const auto rule = gauss_legendre(64, 0.0, d);
                const double conv = rule.integrate([&](double v) {
                    return kappa(t - u, N, d - v).to_double() * kappa(u - s, N, v).to_double();
                });
                worst = std::max(worst, std::fabs(conv - kappa(t - s, N, d).to_double()));
                effort += 64;
            }
        }
    }
    return make_report("kappa_convolution", {{"grid", "60 pts in [0.1,30]"}}, worst, tol, effort,
                       seconds_since(start));
}

// ---------------------------------------------------------------------------
// addition law
// ---------------------------------------------------------------------------

VerificationReport check_sum_property(int N, int a, int a_prime, double b,
                                      std::uint64_t n_pairs, std::uint64_t seed, int workers) {
    const auto start = Clock::now();
    if (n_pairs < 1000) throw std::invalid_argument("check_sum_property: too few pairs");
    const int n_dirs = 5;
    RngStream dir_rng = RngStream(seed, 0x73756d5full).substream(1);
    std::vector<HermitianMatrix> dirs;
    std::vector<std::complex<double>> phi_closed;
    for (int d = 0; d < n_dirs; ++d) {
        dirs.push_back(sample_hermitian_gaussian(N, 0.3, dir_rng));
        const auto eig = eigenvalues_hermitian(dirs.back());
        phi_closed.push_back(
            characteristic_function_lue(eig, N, static_cast<double>(a + a_prime + N), b));
    }

    std::vector<double> s_tr(n_pairs), s_lo(n_pairs), s_hi(n_pairs);
    std::vector<double> r_tr(n_pairs), r_lo(n_pairs), r_hi(n_pairs);
    struct EcfAcc {
        double re = 0.0, im = 0.0, re2 = 0.0, im2 = 0.0;
    };
    std::vector<std::array<EcfAcc, 5>> ecf(kChunks);

    RngStream base(seed, 0x73756d5full);
    parallel_for(kChunks, workers, [&](std::size_t c) {
        auto [lo, hi] = chunk_range(n_pairs, c);
        RngStream rng = base.substream(c + 2);
        for (std::uint64_t i = lo; i < hi; ++i) {
            const auto [sum, ref] = sample_sum_pair(N, a, a_prime, b, rng);
            const auto es = eigenvalues_hermitian(sum);
            const auto er = eigenvalues_hermitian(ref);
            s_tr[i] = trace(sum);
            s_lo[i] = es.front();
            s_hi[i] = es.back();
            r_tr[i] = trace(ref);
            r_lo[i] = er.front();
            r_hi[i] = er.back();
            for (int d = 0; d < n_dirs; ++d) {
                double tr = 0.0;
                for (int p = 0; p < N; ++p)
                    for (int q = 0; q < N; ++q) tr += (sum(p, q) * dirs[d](q, p)).real();
                auto& e = ecf[c][d];
                e.re += std::cos(tr);
                e.im += std::sin(tr);
                e.re2 += std::cos(tr) * std::cos(tr);
                e.im2 += std::sin(tr) * std::sin(tr);
            }
        }
    });

    const double crit = ks_critical_two_sample(n_pairs, n_pairs, 0.001);
    double observed = 0.0;
    std::map<std::string, std::string> params = {
        {"N", fmt(N)}, {"a", fmt(a)}, {"a_prime", fmt(a_prime)}, {"b", fmt(b)},
        {"pairs", std::to_string(n_pairs)}};
    params["ks_trace"] = fmt(ks_statistic_two_sample(s_tr, r_tr));
    params["ks_max"] = fmt(ks_statistic_two_sample(s_hi, r_hi));
    params["ks_min"] = fmt(ks_statistic_two_sample(s_lo, r_lo));
    params["ks_critical"] = fmt(crit);
    observed = std::max(observed, ks_statistic_two_sample(s_tr, r_tr) / crit);
    observed = std::max(observed, ks_statistic_two_sample(s_hi, r_hi) / crit);
    observed = std::max(observed, ks_statistic_two_sample(s_lo, r_lo) / crit);

    const double n = static_cast<double>(n_pairs);
    double worst_ecf = 0.0;
    for (int d = 0; d < n_dirs; ++d) {
        double re = 0.0, im = 0.0, re2 = 0.0, im2 = 0.0;
        for (const auto& chunk : ecf) {
            re += chunk[d].re;
            im += chunk[d].im;
            re2 += chunk[d].re2;
            im2 += chunk[d].im2;
        }
        const std::complex<double> mean(re / n, im / n);
        const double var = std::max(0.0, re2 / n - mean.real() * mean.real()) +
                           std::max(0.0, im2 / n - mean.imag() * mean.imag());
        const double sigma = std::sqrt(var / n);
        worst_ecf = std::max(worst_ecf, std::abs(mean - phi_closed[d]) / (4.0 * sigma));
    }
    params["ecf_worst"] = fmt(worst_ecf);
    observed = std::max(observed, worst_ecf);
    return make_report("sum_property", std::move(params), observed, 1.0, n_pairs,
                       seconds_since(start));
}

// ---------------------------------------------------------------------------
// correlation functions by Monte Carlo
// ---------------------------------------------------------------------------

namespace {

struct BinAcc {
    std::vector<double> sum, sum2;
    explicit BinAcc(std::size_t n) : sum(n, 0.0), sum2(n, 0.0) {}
    BinAcc() = default;
};

double worst_zscore(const std::vector<BinAcc>& acc, const std::vector<double>& expected,
                    std::uint64_t n_traj) {
    const std::size_t nb = expected.size();
    const double n = static_cast<double>(n_traj);
    double worst = 0.0;
    for (std::size_t b = 0; b < nb; ++b) {
        double sum = 0.0, sum2 = 0.0;
        for (const auto& a : acc) {
            sum += a.sum[b];
            sum2 += a.sum2[b];
        }
        const double mean = sum / n;
        double var = std::max(0.0, sum2 / n - mean * mean);
        var = std::max(var, expected[b] / n);  // Poisson floor for starved bins
        const double z = (sum - expected[b]) / std::sqrt(var * n);
        worst = std::max(worst, std::fabs(z));
    }
    return worst;
}

}  // namespace

VerificationReport estimate_correlations_mc(int N, const std::vector<int>& times,
                                            std::uint64_t n_traj, int bins, std::uint64_t seed,
                                            int workers) {
    const auto start = Clock::now();
    if (n_traj < 10000) throw std::invalid_argument("estimate_correlations_mc: need >= 1e4 trajectories");
    if (N > 4) throw std::invalid_argument("estimate_correlations_mc: N <= 4 at desk scale");
    if (times.empty() || times.size() > 2)
        throw std::invalid_argument("estimate_correlations_mc: one or two times");
    RngStream base(seed, 0x636f7272ull);

    if (times.size() == 1) {
        const int t = times[0];
        const double lo = intensity_quantile(N, t, 0.0025);
        const double hi = intensity_quantile(N, t, 0.9975);
        const double width = (hi - lo) / bins;
        std::vector<double> expected(bins);
        int starved = 0;
        for (int b = 0; b < bins; ++b) {
            const auto rule = gauss_legendre(32, lo + b * width, lo + (b + 1) * width);
            expected[b] =
                n_traj * rule.integrate([&](double x) { return intensity(N, t, x); });
            if (expected[b] < 20.0) ++starved;
        }
        std::vector<BinAcc> acc(kChunks);
        parallel_for(kChunks, workers, [&](std::size_t c) {
            auto [clo, chi] = chunk_range(n_traj, c);
            RngStream rng = base.substream(c);
            BinAcc a(bins);
            std::vector<int> local(bins);
            for (std::uint64_t i = clo; i < chi; ++i) {
                const auto traj = simulate_lup(N, t, {t}, rng);
                std::fill(local.begin(), local.end(), 0);
                for (const double lam : traj.eigen_cache[0]) {
                    const int b = static_cast<int>(std::floor((lam - lo) / width));
                    if (b >= 0 && b < bins) ++local[b];
                }
                for (int b = 0; b < bins; ++b) {
                    a.sum[b] += local[b];
                    a.sum2[b] += static_cast<double>(local[b]) * local[b];
                }
            }
            acc[c] = std::move(a);
        });
        const double worst = worst_zscore(acc, expected, n_traj);
        // bins with tiny expected mass are flagged, not failed: the Poisson
        // variance floor keeps their z-scores meaningful
        return make_report("correlation_1pt",
                           {{"N", fmt(N)},
                            {"t", fmt(t)},
                            {"bins", fmt(bins)},
                            {"range", fmt(lo) + ".." + fmt(hi)},
                            {"trajectories", std::to_string(n_traj)},
                            {"low_count_bins", fmt(starved)},
                            {"note", "per-bin z at 4 sigma; family-wise alpha ~ bins*6e-5"}},
                           worst / 4.0, 1.0, n_traj, seconds_since(start));
    }

    const int s = times[0], t = times[1];
    if (s > t) throw std::invalid_argument("estimate_correlations_mc: times must be ascending");

    if (s == t) {
        // equal-time pair intensity against the 2x2 kernel determinant
        const int g = std::min(bins, 14);
        const double lo = intensity_quantile(N, t, 0.005);
        const double hi = intensity_quantile(N, t, 0.995);
        const double width = (hi - lo) / g;
        const KernelSpec spec(KernelFamily::laguerre_extended, N, 1e-6);
        std::vector<double> expected(static_cast<std::size_t>(g) * g);
        for (int bi = 0; bi < g; ++bi)
            for (int bj = 0; bj < g; ++bj) {
                const auto rx = gauss_legendre(8, lo + bi * width, lo + (bi + 1) * width);
                const auto ry = gauss_legendre(8, lo + bj * width, lo + (bj + 1) * width);
                double v = 0.0;
                for (std::size_t i = 0; i < rx.nodes.size(); ++i)
                    for (std::size_t j = 0; j < ry.nodes.size(); ++j) {
                        const std::vector<SpaceTimePoint> pts = {
                            {rx.nodes[i], double(t)}, {ry.nodes[j], double(t)}};
                        v += rx.weights[i] * ry.weights[j] * correlation_det(pts, spec);
                    }
                expected[static_cast<std::size_t>(bi) * g + bj] = n_traj * v;
            }
        std::vector<BinAcc> acc(kChunks);
        parallel_for(kChunks, workers, [&](std::size_t c) {
            auto [clo, chi] = chunk_range(n_traj, c);
            RngStream rng = base.substream(c);
            BinAcc a(static_cast<std::size_t>(g) * g);
            std::vector<int> local(static_cast<std::size_t>(g) * g);
            for (std::uint64_t i = clo; i < chi; ++i) {
                const auto traj = simulate_lup(N, t, {t}, rng);
                std::fill(local.begin(), local.end(), 0);
                const auto& eig = traj.eigen_cache[0];
                for (int p = 0; p < N; ++p)
                    for (int q = 0; q < N; ++q) {
                        if (p == q) continue;
                        const int bi = static_cast<int>(std::floor((eig[p] - lo) / width));
                        const int bj = static_cast<int>(std::floor((eig[q] - lo) / width));
                        if (bi >= 0 && bi < g && bj >= 0 && bj < g)
                            ++local[static_cast<std::size_t>(bi) * g + bj];
                    }
                for (std::size_t b = 0; b < local.size(); ++b) {
                    a.sum[b] += local[b];
                    a.sum2[b] += static_cast<double>(local[b]) * local[b];
                }
            }
            acc[c] = std::move(a);
        });
        const double worst = worst_zscore(acc, expected, n_traj);
        return make_report("correlation_2pt_equal_time",
                           {{"N", fmt(N)},
                            {"t", fmt(t)},
                            {"grid", fmt(g) + "x" + fmt(g)},
                            {"trajectories", std::to_string(n_traj)}},
                           worst / 4.0, 1.0, n_traj, seconds_since(start));
    }

    // cross-time product intensities over rectangle pairs
    const double qt15 = intensity_quantile(N, t, 0.15), qt45 = intensity_quantile(N, t, 0.45);
    const double qt55 = intensity_quantile(N, t, 0.55), qt85 = intensity_quantile(N, t, 0.85);
    const double qs10 = intensity_quantile(N, s, 0.10), qs40 = intensity_quantile(N, s, 0.40);
    const double qs50 = intensity_quantile(N, s, 0.50), qs85 = intensity_quantile(N, s, 0.85);
    const std::array<std::pair<double, double>, 2> rects_t = {
        std::pair{qt15, qt45}, std::pair{qt55, qt85}};
    const std::array<std::pair<double, double>, 2> rects_s = {
        std::pair{qs10, qs40}, std::pair{qs50, qs85}};

    std::vector<double> expected;
    for (const auto& ay : rects_t)
        for (const auto& bx : rects_s) {
            const auto ry = gauss_legendre(32, ay.first, ay.second);
            const auto rx = gauss_legendre(32, bx.first, bx.second);
            double v = 0.0;
            for (std::size_t i = 0; i < ry.nodes.size(); ++i) {
                const SpaceTimePoint py{ry.nodes[i], double(t)};
                const double kyy = kernel_laguerre(py, py, N);
                for (std::size_t j = 0; j < rx.nodes.size(); ++j) {
                    const SpaceTimePoint px{rx.nodes[j], double(s)};
                    const double det = kyy * kernel_laguerre(px, px, N) -
                                       kernel_laguerre(py, px, N) * kernel_laguerre(px, py, N);
                    v += ry.weights[i] * rx.weights[j] * det;
                }
            }
            expected.push_back(n_traj * v);
        }

    std::vector<BinAcc> acc(kChunks);
    parallel_for(kChunks, workers, [&](std::size_t c) {
        auto [clo, chi] = chunk_range(n_traj, c);
        RngStream rng = base.substream(c);
        BinAcc a(4);
        for (std::uint64_t i = clo; i < chi; ++i) {
            const auto traj = simulate_lup(N, t, {s, t}, rng);
            const auto& eig_s = traj.eigen_cache[0];
            const auto& eig_t = traj.eigen_cache[1];
            int idx = 0;
            for (const auto& ay : rects_t)
                for (const auto& bx : rects_s) {
                    int na = 0, nb = 0;
                    for (const double l : eig_t)
                        if (l >= ay.first && l < ay.second) ++na;
                    for (const double l : eig_s)
                        if (l >= bx.first && l < bx.second) ++nb;
                    const int prod = na * nb;
                    a.sum[idx] += prod;
                    a.sum2[idx] += static_cast<double>(prod) * prod;
                    ++idx;
                }
        }
        acc[c] = std::move(a);
    });
    const double worst = worst_zscore(acc, expected, n_traj);
    return make_report("correlation_cross_time",
                       {{"N", fmt(N)},
                        {"s", fmt(s)},
                        {"t", fmt(t)},
                        {"rectangles", "4"},
                        {"trajectories", std::to_string(n_traj)}},
                       worst / 4.0, 1.0, n_traj, seconds_since(start));
}

// ---------------------------------------------------------------------------
// scaling limit
// ---------------------------------------------------------------------------

VerificationReport check_scaling_limit(int N, const std::vector<double>& gammas,
                                       const std::vector<ScalePoint>& points) {
    const auto start = Clock::now();
    if (gammas.size() < 2) throw std::invalid_argument("check_scaling_limit: need >= 2 gammas");
    for (std::size_t i = 1; i < gammas.size(); ++i)
        if (gammas[i] <= gammas[i - 1])
            throw std::invalid_argument("check_scaling_limit: gammas must be ascending");
    for (const auto& p : points) {
        const double tmax = std::max(p.t, p.s);
        if (static_cast<double>(N) * (gammas.back() * tmax - 1.0) > 1e7)
            throw std::runtime_error(
                "check_scaling_limit: N(gamma t - 1) exceeds the validated log-gamma range");
    }

    std::vector<std::vector<double>> errs(points.size());
    for (std::size_t pi = 0; pi < points.size(); ++pi) {
        const auto& p = points[pi];
        const double href = kernel_hermite({p.y, double(p.t)}, {p.x, double(p.s)}, N, 1e-12);
        for (const double g : gammas) {
            const double root = std::sqrt(static_cast<double>(N) * g);
            const double yt = g * p.t, xs = g * p.s;
            if (std::fabs(yt - std::nearbyint(yt)) > 1e-9 ||
                std::fabs(xs - std::nearbyint(xs)) > 1e-9)
                throw std::invalid_argument("check_scaling_limit: gamma*t must be an integer");
            const double scaled =
                root * kernel_laguerre({root * p.y + N * g * p.t, yt},
                                       {root * p.x + N * g * p.s, xs}, N);
            errs[pi].push_back(std::fabs(scaled - href));
        }
    }

    bool monotone = true;
    for (const auto& e : errs)
        for (std::size_t i = 1; i < e.size(); ++i)
            if (!(e[i] < e[i - 1])) monotone = false;

    // least-squares slope of log worst-point error against log gamma
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < gammas.size(); ++i) {
        double worst = 0.0;
        for (const auto& e : errs) worst = std::max(worst, e[i]);
        lx.push_back(std::log(gammas[i]));
        ly.push_back(std::log(worst));
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= lx.size();
    my /= ly.size();
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxy += (lx[i] - mx) * (ly[i] - my);
        sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    const double slope = sxy / sxx;

    const double observed = std::max(std::fabs(slope + 0.5) / 0.2, monotone ? 0.0 : 2.0);
    std::map<std::string, std::string> params = {{"N", fmt(N)},
                                                 {"slope", fmt(slope)},
                                                 {"monotone", monotone ? "true" : "false"},
                                                 {"points", std::to_string(points.size())}};
    for (std::size_t i = 0; i < gammas.size(); ++i) {
        double worst = 0.0;
        for (const auto& e : errs) worst = std::max(worst, e[i]);
        params["err_gamma_" + fmt(gammas[i])] = fmt(worst);
    }
    return make_report("scaling_limit", std::move(params), observed, 1.0,
                       gammas.size() * points.size(), seconds_since(start));
}

// ---------------------------------------------------------------------------
// lemma limits
// ---------------------------------------------------------------------------

VerificationReport check_lemma_limits(LemmaKind kind, const std::vector<double>& a_values,
                                      double final_tol) {
    const auto start = Clock::now();
    if (a_values.size() < 2) throw std::invalid_argument("check_lemma_limits: need >= 2 values");
    for (double a : a_values)
        if (!(a > 1.0) || a > 1e8)
            throw std::invalid_argument("check_lemma_limits: a out of range");

    const std::vector<double> bs = {0.0, 1.0, 2.5};
    const std::vector<double> xs = {-1.0, 0.0, 0.7};
    std::vector<double> errs;
    std::string name;
    for (const double a : a_values) {
        double e = 0.0;
        switch (kind) {
            case LemmaKind::L2H: {
                name = "lemma_laguerre_to_hermite";
                for (int k = 0; k <= 5; ++k)
                    for (const double b : bs)
                        for (const double x : xs) {
                            const LogValue lv =
                                laguerre_monic(k, a + b, std::sqrt(2.0 * a) * x + a);
                            const double scaled =
                                lv.sign * std::exp(lv.logmag - 0.5 * k * std::log(2.0 * a));
                            e = std::max(e, std::fabs(scaled - hermite_monic(k, x).to_double()));
                        }
                break;
            }
            case LemmaKind::norm: {
                name = "lemma_norm_ratio";
                for (int k = 0; k <= 5; ++k)
                    for (const double b : bs) {
                        // r_k^{a+b}/a^k = k! Gamma(a+b+k+1)/(Gamma(a+b+1) a^k)
                        const double ratio = std::exp(log_gamma(a + b + k + 1.0) -
                                                      log_gamma(a + b + 1.0) - k * std::log(a));
                        const double kfact = std::exp(log_gamma(k + 1.0));
                        e = std::max(e, std::fabs(kfact * ratio - kfact));
                    }
                break;
            }
            case LemmaKind::weight: {
                name = "lemma_weight_to_gaussian";
                for (const double b : bs)
                    for (double x = -3.0; x <= 3.001; x += 0.25) {
                        const double v =
                            std::sqrt(a) *
                            weight_gamma(WeightParams(a + b, 1.0), std::sqrt(a) * x + a)
                                .to_double();
                        e = std::max(
                            e, std::fabs(v - std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI)));
                    }
                break;
            }
        }
        errs.push_back(e);
    }

    bool monotone = true;
    for (std::size_t i = 1; i < errs.size(); ++i)
        if (!(errs[i] < errs[i - 1])) monotone = false;
    const double observed = std::max(errs.back() / final_tol, monotone ? 0.0 : 2.0);
    std::map<std::string, std::string> params = {{"monotone", monotone ? "true" : "false"},
                                                 {"final_error", fmt(errs.back())}};
    for (std::size_t i = 0; i < a_values.size(); ++i)
        params["err_a_" + fmt(a_values[i])] = fmt(errs[i]);
    return make_report(name, std::move(params), observed, 1.0, a_values.size(),
                       seconds_since(start));
}

}  // namespace lup
