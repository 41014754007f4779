#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace lup {

// Kolmogorov-Smirnov statistics. Inputs are copied and sorted internally.
double ks_statistic_one_sample(std::vector<double> sample,
                               const std::function<double(double)>& cdf);
double ks_statistic_two_sample(std::vector<double> a, std::vector<double> b);

// Asymptotic critical values at level alpha.
double ks_critical_one_sample(std::size_t n, double alpha);
double ks_critical_two_sample(std::size_t n, std::size_t m, double alpha);

// CDF of Gamma(shape, rate).
double gamma_cdf(double shape, double rate, double x);

// Streaming mean/variance (Welford).
struct RunningStats {
    std::size_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        ++n;
        const double d = x - mean;
        mean += d / static_cast<double>(n);
        m2 += d * (x - mean);
    }
    double variance() const { return n > 1 ? m2 / static_cast<double>(n - 1) : 0.0; }
    double std_error() const;
};

double pearson_correlation(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace lup
