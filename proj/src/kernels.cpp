#include "lup/kernels.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "lup/airy.hpp"
#include "lup/polybasis.hpp"
#include "lup/quadrature.hpp"
#include "lup/special.hpp"

namespace lup {

namespace {

int integer_time(double t, const char* who) {
    const double r = std::nearbyint(t);
    if (std::fabs(t - r) > 1e-9 || r < 1.0)
        throw std::invalid_argument(std::string(who) + ": time must be a positive integer");
    return static_cast<int>(r);
}

// log of m_k = sqrt(pi) k!/2^k
double log_hermite_norm(int k) {
    return 0.5 * std::log(M_PI) + log_gamma(k + 1.0) - k * std::log(2.0);
}

}  // namespace

KernelSpec::KernelSpec(KernelFamily f, int n, double tol) : family(f), N(n), tolerance(tol) {
    if (!(tol > 0.0 && tol <= 1e-3))
        throw std::invalid_argument("KernelSpec: tolerance must lie in (0, 1e-3]");
    if ((f == KernelFamily::laguerre_extended || f == KernelFamily::hermite_extended) && n < 1)
        throw std::invalid_argument("KernelSpec: N must be positive for polynomial kernels");
}

double kernel_laguerre(const SpaceTimePoint& y, const SpaceTimePoint& x, int N) {
    if (N < 1) throw std::invalid_argument("kernel_laguerre: N must be positive");
    const int t = integer_time(y.t, "kernel_laguerre");
    const int s = integer_time(x.t, "kernel_laguerre");
    const double at = static_cast<double>(N) * (t - 1);
    const double as = static_cast<double>(N) * (s - 1);

    LogValue sum = LogValue::zero();
    if (x.x > 0.0) {
        std::vector<LogValue> lt(N), ls(N), terms(N);
        laguerre_monic_all(N - 1, at, y.x, lt);
        laguerre_monic_all(N - 1, as, x.x, ls);
        const LogValue w = weight_gamma(WeightParams(as, 1.0), x.x);
        for (int k = 0; k < N; ++k) terms[k] = lt[k] * ls[k] * w / laguerre_norm(k, as);
        sum = log_sum(terms);
    }
    if (s > t) sum = sum - kappa(s - t, N, x.x - y.x);
    return sum.to_double();
}

double kernel_laguerre_cd(double y, double x, int t, int N) {
    if (N < 1) throw std::invalid_argument("kernel_laguerre_cd: N must be positive");
    if (t < 1) throw std::invalid_argument("kernel_laguerre_cd: t must be >= 1");
    if (x <= 0.0) return 0.0;
    const double a = static_cast<double>(N) * (t - 1);
    const LogValue w = weight_gamma(WeightParams(a, 1.0), x);
    const LogValue rn1 = laguerre_norm(N - 1, a);
    const double scale = 1.0 + std::max(std::fabs(x), std::fabs(y));
    if (std::fabs(y - x) > 1e-6 * scale) {
        const LogValue num = laguerre_monic(N, a, y) * laguerre_monic(N - 1, a, x) -
                             laguerre_monic(N - 1, a, y) * laguerre_monic(N, a, x);
        return (num / LogValue::from_double(y - x) * w / rn1).to_double();
    }
    LogValue ln, dln, ln1, dln1;
    laguerre_monic_with_deriv(N, a, x, ln, dln);
    laguerre_monic_with_deriv(N - 1, a, x, ln1, dln1);
    return ((dln * ln1 - dln1 * ln) * w / rn1).to_double();
}

double kernel_hermite(const SpaceTimePoint& y, const SpaceTimePoint& x, int N, double tol) {
    if (N < 1) throw std::invalid_argument("kernel_hermite: N must be positive");
    if (!(y.t > 0.0 && x.t > 0.0))
        throw std::invalid_argument("kernel_hermite: times must be positive");
    if (!(tol > 0.0)) throw std::invalid_argument("kernel_hermite: tol must be positive");
    const double t = y.t, s = x.t;
    const double zy = y.x / std::sqrt(2.0 * t);
    const double zx = x.x / std::sqrt(2.0 * s);
    const double log_ratio = 0.5 * std::log(t / s);  // log sqrt(t/s)
    const double log_pref = -zx * zx - 0.5 * std::log(2.0 * s);

    if (s <= t) {
        std::vector<LogValue> hy(N), hx(N), terms(N);
        hermite_monic_all(N - 1, zy, hy);
        hermite_monic_all(N - 1, zx, hx);
        for (int k = 0; k < N; ++k) {
            terms[k] = hy[k] * hx[k] *
                       LogValue{1, k * log_ratio + log_pref - log_hermite_norm(k)};
        }
        return log_sum(terms).to_double();
    }

    // s > t: negative tail sum k = N..inf, geometric decay at sqrt(t/s) < 1
    const LogValue zyv = LogValue::from_double(zy), zxv = LogValue::from_double(zx);
    LogValue hy_prev = LogValue::zero(), hy_cur = LogValue::one();
    LogValue hx_prev = LogValue::zero(), hx_cur = LogValue::one();
    double partial = 0.0;
    int quiet = 0;
    for (int k = 0; k < 2000; ++k) {
        if (k >= N) {
            const LogValue term =
                hy_cur * hx_cur * LogValue{1, k * log_ratio + log_pref - log_hermite_norm(k)};
            const double td = term.to_double();
            partial += td;
            if (std::fabs(td) < tol * std::fabs(partial))
                ++quiet;
            else
                quiet = 0;
            if (quiet >= 5) return -partial;
        }
        // H_{k+1} = z H_k - (k/2) H_{k-1}
        const LogValue ny = zyv * hy_cur - LogValue::from_double(0.5 * k) * hy_prev;
        hy_prev = hy_cur;
        hy_cur = ny;
        const LogValue nx = zxv * hx_cur - LogValue::from_double(0.5 * k) * hx_prev;
        hx_prev = hx_cur;
        hx_cur = nx;
    }
    throw std::runtime_error("kernel_hermite: tail series did not meet tolerance by the term cap");
}

double kernel_sine(const SpaceTimePoint& y, const SpaceTimePoint& x, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("kernel_sine: tol must be positive");
    const double d = y.x - x.x;
    const double dt = x.t - y.t;  // s - t
    if (dt <= 0.0) {
        return integrate_adaptive(
            [&](double u) { return std::exp(-M_PI * M_PI * u * u * dt) * std::cos(M_PI * u * d); },
            0.0, 1.0, 0.25 * tol);
    }
    // s > t: -int_1^inf, gaussian decay; truncate where the tail bound is met
    double umax = 1.0;
    const double c = M_PI * M_PI * dt;
    while (std::exp(-c * umax * umax) / (2.0 * c * umax) > 0.25 * tol && umax < 1e4) umax *= 1.5;
    const double v = integrate_adaptive(
        [&](double u) { return std::exp(-c * u * u) * std::cos(M_PI * u * d); }, 1.0, umax,
        0.25 * tol);
    return -v;
}

double kernel_airy(const SpaceTimePoint& y, const SpaceTimePoint& x, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("kernel_airy: tol must be positive");
    constexpr double kLo = -15.0, kHi = 30.0;
    if (y.x < kLo || y.x > kHi || x.x < kLo || x.x > kHi)
        throw std::domain_error("kernel_airy: positions outside the supported Airy range");
    const double dt = x.t - y.t;  // s - t
    if (dt <= 0.0) {
        const double umax = kHi - std::max(y.x, x.x);
        if (umax <= 0.0) return 0.0;
        return integrate_adaptive(
            [&](double u) {
                return std::exp(0.5 * u * dt) * airy_ai(y.x + u) * airy_ai(x.x + u);
            },
            0.0, umax, 0.5 * tol);
    }
    // s > t: -int_{-inf}^0; the exponential factor decays into u < 0
    const double umin = kLo - std::min(y.x, x.x);  // <= 0
    auto envelope = [](double z) {
        return z < -1.0 ? 0.6 * std::pow(-z, -0.25) : 0.54;
    };
    const double tail_bound = std::exp(0.5 * umin * dt) * envelope(y.x + umin) *
                              envelope(x.x + umin) * 2.0 / dt;
    if (tail_bound > 0.5 * tol)
        throw std::runtime_error(
            "kernel_airy: s > t tail cannot meet tolerance within the supported range");
    const double v = integrate_adaptive(
        [&](double u) { return std::exp(0.5 * u * dt) * airy_ai(y.x + u) * airy_ai(x.x + u); },
        umin, 0.0, 0.5 * tol);
    return -v;
}

double kernel_eval(const KernelSpec& spec, const SpaceTimePoint& y, const SpaceTimePoint& x) {
    switch (spec.family) {
        case KernelFamily::laguerre_extended:
            return kernel_laguerre(y, x, spec.N);
        case KernelFamily::hermite_extended:
            return kernel_hermite(y, x, spec.N, spec.tolerance);
        case KernelFamily::sine_extended:
            return kernel_sine(y, x, spec.tolerance);
        case KernelFamily::airy_extended:
            return kernel_airy(y, x, spec.tolerance);
    }
    throw std::logic_error("kernel_eval: unknown family");
}

double correlation_det(std::span<const SpaceTimePoint> points, const KernelSpec& spec) {
    const std::size_t n = points.size();
    if (n < 1 || n > 8)
        throw std::invalid_argument("correlation_det: between 1 and 8 points supported");
    std::vector<std::vector<double>> m(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m[i][j] = kernel_eval(spec, points[i], points[j]);
    // partially pivoted LU determinant; entries are O(1) at desk scale
    double det = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::fabs(m[i][k]) > std::fabs(m[piv][k])) piv = i;
        if (m[piv][k] == 0.0) return 0.0;
        if (piv != k) {
            std::swap(m[piv], m[k]);
            det = -det;
        }
        det *= m[k][k];
        for (std::size_t i = k + 1; i < n; ++i) {
            const double f = m[i][k] / m[k][k];
            for (std::size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
        }
    }
    return det;
}

}  // namespace lup
