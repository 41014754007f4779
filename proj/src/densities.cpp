#include "lup/densities.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "lup/polybasis.hpp"
#include "lup/special.hpp"

namespace lup {

LogValue vandermonde(std::span<const double> points) {
    LogValue acc = LogValue::one();
    for (std::size_t k = 0; k + 1 < points.size(); ++k)
        for (std::size_t l = k + 1; l < points.size(); ++l) {
            acc = acc * LogValue::from_double(points[k] - points[l]);
            if (acc.is_zero()) return acc;
        }
    return acc;
}

LogValue log_z_laguerre(int N, double a, double b) {
    if (N < 1) throw std::invalid_argument("log_z_laguerre: N must be positive");
    if (!(a > -1.0) || !(b > 0.0)) throw std::invalid_argument("log_z_laguerre: bad parameters");
    double lm = log_gamma(N + 1.0) - static_cast<double>(N) * (N - 1) * std::log(b);
    for (int j = 1; j <= N; ++j) lm += log_gamma(j) + log_gamma(a + j) - log_gamma(a + 1.0);
    return {1, lm};
}

LogValue eig_jpdf(std::span<const double> points, int N, double a, double b) {
    if (static_cast<int>(points.size()) != N)
        throw std::invalid_argument("eig_jpdf: point count must equal N");
    const WeightParams p(a, b);
    LogValue acc = vandermonde(points);
    acc = acc * acc;
    for (const double x : points) {
        acc = acc * weight_gamma(p, x);
        if (acc.is_zero()) return acc;
    }
    return acc / log_z_laguerre(N, a, b);
}

LogValue log_det(std::vector<std::vector<LogValue>> m) {
    const std::size_t n = m.size();
    double scale = 0.0;
    std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        if (m[i].size() != n) throw std::invalid_argument("log_det: matrix not square");
        double top = -std::numeric_limits<double>::infinity();
        for (const auto& v : m[i])
            if (v.sign != 0 && v.logmag > top) top = v.logmag;
        if (!std::isfinite(top)) return LogValue::zero();  // a zero row
        scale += top;
        for (std::size_t j = 0; j < n; ++j)
            if (m[i][j].sign != 0)
                a[i][j] = static_cast<double>(m[i][j].sign) * std::exp(m[i][j].logmag - top);
    }
    int sign = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::fabs(a[i][k]) > std::fabs(a[piv][k])) piv = i;
        if (a[piv][k] == 0.0) return LogValue::zero();
        if (piv != k) {
            std::swap(a[piv], a[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const double f = a[i][k] / a[k][k];
            for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
        }
    }
    LogValue det{sign, scale};
    for (std::size_t k = 0; k < n; ++k) det = det * LogValue::from_double(a[k][k]);
    return det;
}

LogValue transition_density(std::span<const double> y, std::span<const double> x, int t, int s,
                            int N) {
    if (!(t > s && s > 0)) throw std::invalid_argument("transition_density: need t > s > 0");
    if (static_cast<int>(y.size()) != N || static_cast<int>(x.size()) != N)
        throw std::invalid_argument("transition_density: config size must equal N");
    for (std::size_t i = 0; i + 1 < x.size(); ++i)
        for (std::size_t j = i + 1; j < x.size(); ++j)
            if (x[i] == x[j])
                throw std::invalid_argument("transition_density: coincident start points");
    std::vector<std::vector<LogValue>> m(N, std::vector<LogValue>(N));
    for (int k = 0; k < N; ++k)
        for (int l = 0; l < N; ++l) m[k][l] = kappa(t - s, N, y[k] - x[l]);
    const LogValue det = log_det(std::move(m));
    if (det.is_zero()) return LogValue::zero();
    const LogValue fact{1, log_gamma(N + 1.0)};
    return vandermonde(y) / vandermonde(x) * det / fact;
}

LogValue spatiotemporal_jpdf(std::span<const std::vector<double>> configs,
                             std::span<const int> times, int N) {
    if (configs.empty() || configs.size() != times.size())
        throw std::invalid_argument("spatiotemporal_jpdf: configs/times mismatch");
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] < 1) throw std::invalid_argument("spatiotemporal_jpdf: times must be >= 1");
        if (i > 0 && times[i] <= times[i - 1])
            throw std::invalid_argument("spatiotemporal_jpdf: times must be strictly increasing");
        if (static_cast<int>(configs[i].size()) != N)
            throw std::invalid_argument("spatiotemporal_jpdf: config size must equal N");
    }
    const int n = static_cast<int>(configs.size()) - 1;
    const double a0 = static_cast<double>(N) * (times[0] - 1);
    const WeightParams w0(a0, 1.0);

    LogValue acc = vandermonde(configs[n]) * vandermonde(configs[0]);
    const double log_nfact = log_gamma(N + 1.0);
    acc = acc / LogValue{1, n * log_nfact} / log_z_laguerre(N, a0, 1.0);
    for (const double xj : configs[0]) {
        acc = acc * weight_gamma(w0, xj);
        if (acc.is_zero()) return acc;
    }
    for (int m = 1; m <= n; ++m) {
        std::vector<std::vector<LogValue>> mat(N, std::vector<LogValue>(N));
        for (int k = 0; k < N; ++k)
            for (int l = 0; l < N; ++l)
                mat[k][l] = kappa(times[m] - times[m - 1], N, configs[m][k] - configs[m - 1][l]);
        acc = acc * log_det(std::move(mat));
        if (acc.is_zero()) return acc;
    }
    return acc;
}

}  // namespace lup
