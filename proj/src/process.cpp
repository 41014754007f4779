#include "lup/process.hpp"

#include <cmath>
#include <stdexcept>

#include "lup/eigen_jacobi.hpp"
#include "lup/sampling.hpp"

namespace lup {

Trajectory simulate_lup(int N, int t_max, const std::vector<int>& record_times, RngStream& rng) {
    if (N < 1) throw std::invalid_argument("simulate_lup: N must be positive");
    if (t_max < 1) throw std::invalid_argument("simulate_lup: t_max must be positive");
    if (record_times.empty()) throw std::invalid_argument("simulate_lup: record_times empty");
    for (std::size_t i = 0; i < record_times.size(); ++i) {
        if (record_times[i] < 1 || record_times[i] > t_max)
            throw std::invalid_argument("simulate_lup: record time out of range");
        if (i > 0 && record_times[i] <= record_times[i - 1])
            throw std::invalid_argument("simulate_lup: record_times must be ascending");
    }
    Trajectory traj;
    traj.N = N;
    traj.times = record_times;
    traj.states.reserve(record_times.size());
    HermitianMatrix state(N);
    std::size_t next = 0;
    for (int t = 1; t <= t_max && next < record_times.size(); ++t) {
        state = state.add(sample_lue(N, 0, 1.0, rng));
        if (t == record_times[next]) {
            traj.states.push_back(state);
            traj.eigen_cache.push_back(eigenvalues_hermitian(state));
            ++next;
        }
    }
    return traj;
}

std::complex<double> characteristic_function_lue(std::span<const double> eigs_T, int N, double a,
                                                 double b) {
    if (!(a > -1.0) || !(b > 0.0))
        throw std::invalid_argument("characteristic_function_lue: bad parameters");
    // prod_j (1 - i t_j/b)^{-(N+a)} computed through log/arg to stay stable
    double logmag = 0.0, arg = 0.0;
    for (const double t : eigs_T) {
        const std::complex<double> z(1.0, -t / b);
        logmag += -(N + a) * std::log(std::abs(z));
        arg += -(N + a) * std::arg(z);
    }
    return std::polar(std::exp(logmag), arg);
}

EcfEstimate empirical_characteristic(std::span<const HermitianMatrix> samples,
                                     const HermitianMatrix& T) {
    if (samples.empty()) throw std::invalid_argument("empirical_characteristic: no samples");
    const int n = T.dim();
    double sum_re = 0.0, sum_im = 0.0, sum_re2 = 0.0, sum_im2 = 0.0;
    for (const auto& x : samples) {
        if (x.dim() != n) throw std::invalid_argument("empirical_characteristic: dim mismatch");
        // tr(X T) = sum_{ij} X_ij T_ji; real for Hermitian X, T
        double tr = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) tr += (x(i, j) * T(j, i)).real();
        sum_re += std::cos(tr);
        sum_im += std::sin(tr);
        sum_re2 += std::cos(tr) * std::cos(tr);
        sum_im2 += std::sin(tr) * std::sin(tr);
    }
    const double count = static_cast<double>(samples.size());
    const std::complex<double> mean(sum_re / count, sum_im / count);
    const double var_re = std::max(0.0, sum_re2 / count - mean.real() * mean.real());
    const double var_im = std::max(0.0, sum_im2 / count - mean.imag() * mean.imag());
    return {mean, std::sqrt((var_re + var_im) / count)};
}

std::pair<HermitianMatrix, HermitianMatrix> sample_sum_pair(int N, int a, int a_prime, double b,
                                                            RngStream& rng) {
    if (a < 0 || a_prime < 0) throw std::invalid_argument("sample_sum_pair: indices must be >= 0");
    const HermitianMatrix x = sample_lue(N, a, b, rng);
    const HermitianMatrix y = sample_lue(N, a_prime, b, rng);
    const HermitianMatrix ref = sample_lue(N, a + a_prime + N, b, rng);
    return {x.add(y), ref};
}

}  // namespace lup
