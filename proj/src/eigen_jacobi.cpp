#include "lup/eigen_jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace lup {

namespace {

constexpr int kMaxSweeps = 60;

double offdiag_norm(const std::vector<cdouble>& a, int n) {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) s += std::norm(a[static_cast<std::size_t>(i) * n + j]);
    return std::sqrt(2.0 * s);
}

EigenDecomposition jacobi(const HermitianMatrix& h, double tol, bool want_vectors) {
    const int n = h.dim();
    std::vector<cdouble> a = h.data();
    ComplexMatrix v;
    if (want_vectors) {
        v = ComplexMatrix(n, n);
        for (int i = 0; i < n; ++i) v.at(i, i) = 1.0;
    }
    auto idx = [n](int i, int j) { return static_cast<std::size_t>(i) * n + j; };
    const double target = tol * h.frobenius();

    int sweep = 0;
    while (n > 1 && offdiag_norm(a, n) > target) {
        if (++sweep > kMaxSweeps)
            throw std::runtime_error("eigenvalues_hermitian: Jacobi iteration did not converge");
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cdouble apq = a[idx(p, q)];
                const double m = std::abs(apq);
                if (m == 0.0) continue;
                const double phi = std::atan2(apq.imag(), apq.real());
                const double app = a[idx(p, p)].real();
                const double aqq = a[idx(q, q)].real();
                const double tau = (aqq - app) / (2.0 * m);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::fabs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const cdouble eip = std::polar(1.0, phi);   // e^{+i phi}
                const cdouble eim = std::conj(eip);         // e^{-i phi}
                // column update: A <- A * U with U = [[c, s], [-s e^{-ip}, c e^{-ip}]]
                for (int i = 0; i < n; ++i) {
                    const cdouble aip = a[idx(i, p)];
                    const cdouble aiq = a[idx(i, q)];
                    a[idx(i, p)] = c * aip - s * eim * aiq;
                    a[idx(i, q)] = s * aip + c * eim * aiq;
                }
                // row update: A <- U^dagger * A
                for (int j = 0; j < n; ++j) {
                    const cdouble apj = a[idx(p, j)];
                    const cdouble aqj = a[idx(q, j)];
                    a[idx(p, j)] = c * apj - s * eip * aqj;
                    a[idx(q, j)] = s * apj + c * eip * aqj;
                }
                a[idx(p, q)] = 0.0;
                a[idx(q, p)] = 0.0;
                a[idx(p, p)] = {a[idx(p, p)].real(), 0.0};
                a[idx(q, q)] = {a[idx(q, q)].real(), 0.0};
                if (want_vectors) {
                    for (int i = 0; i < n; ++i) {
                        const cdouble vip = v.at(i, p);
                        const cdouble viq = v.at(i, q);
                        v.at(i, p) = c * vip - s * eim * viq;
                        v.at(i, q) = s * vip + c * eim * viq;
                    }
                }
            }
        }
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return a[idx(i, i)].real() < a[idx(j, j)].real(); });
    EigenDecomposition out;
    out.values.resize(n);
    for (int i = 0; i < n; ++i) out.values[i] = a[idx(order[i], order[i])].real();
    if (want_vectors) {
        out.vectors = ComplexMatrix(n, n);
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) out.vectors.at(i, j) = v.at(i, order[j]);
    }
    return out;
}

}  // namespace

std::vector<double> eigenvalues_hermitian(const HermitianMatrix& h, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("eigenvalues_hermitian: tol must be positive");
    return jacobi(h, tol, false).values;
}

EigenDecomposition eigen_hermitian(const HermitianMatrix& h, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("eigen_hermitian: tol must be positive");
    return jacobi(h, tol, true);
}

}  // namespace lup
