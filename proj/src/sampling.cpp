#include "lup/sampling.hpp"

#include <cmath>
#include <stdexcept>

namespace lup {

ComplexMatrix sample_ginibre(int rows, int cols, double variance, RngStream& rng) {
    if (rows < 1 || cols < 1) throw std::invalid_argument("sample_ginibre: bad shape");
    if (!(variance > 0.0)) throw std::invalid_argument("sample_ginibre: variance must be > 0");
    ComplexMatrix g(rows, cols);
    for (auto& e : g.a) e = rng.next_complex_gaussian(variance);
    return g;
}

HermitianMatrix sample_lue(int N, int a, double b, RngStream& rng) {
    if (N < 1) throw std::invalid_argument("sample_lue: N must be positive");
    if (a < 0) throw std::invalid_argument("sample_lue: a must be a nonnegative integer");
    if (!(b > 0.0)) throw std::invalid_argument("sample_lue: b must be > 0");
    const ComplexMatrix g = sample_ginibre(N, N + a, 1.0 / b, rng);
    return gram(g);
}

HermitianMatrix sample_hermitian_gaussian(int N, double scale, RngStream& rng) {
    std::vector<cdouble> e(static_cast<std::size_t>(N) * N);
    for (int i = 0; i < N; ++i) {
        e[static_cast<std::size_t>(i) * N + i] = scale * rng.next_gaussian();
        for (int j = i + 1; j < N; ++j) {
            const cdouble v = scale * rng.next_complex_gaussian(1.0);
            e[static_cast<std::size_t>(i) * N + j] = v;
            e[static_cast<std::size_t>(j) * N + i] = std::conj(v);
        }
    }
    return HermitianMatrix(N, std::move(e));
}

double sample_gamma(double shape, double rate, RngStream& rng) {
    if (!(shape >= 1.0)) throw std::invalid_argument("sample_gamma: shape must be >= 1");
    if (!(rate > 0.0)) throw std::invalid_argument("sample_gamma: rate must be > 0");
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        const double x = rng.next_gaussian();
        const double f = 1.0 + c * x;
        if (f <= 0.0) continue;
        const double v = f * f * f;
        const double u = rng.next_uniform();
        if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) return d * v / rate;
    }
}

}  // namespace lup
