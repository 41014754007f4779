#include "lup/hermitian.hpp"

#include <cmath>
#include <stdexcept>

namespace lup {

HermitianMatrix::HermitianMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n) {
    if (n < 1) throw std::invalid_argument("HermitianMatrix: dim must be positive");
}

HermitianMatrix::HermitianMatrix(int n, std::vector<cdouble> entries) : n_(n), a_(std::move(entries)) {
    if (n < 1) throw std::invalid_argument("HermitianMatrix: dim must be positive");
    if (a_.size() != static_cast<std::size_t>(n) * n)
        throw std::invalid_argument("HermitianMatrix: entry count mismatch");
    double fro2 = 0.0, defect2 = 0.0;
    for (int i = 0; i < n_; ++i) {
        for (int j = 0; j < n_; ++j) {
            const cdouble v = a_[static_cast<std::size_t>(i) * n_ + j];
            fro2 += std::norm(v);
            const cdouble d = v - std::conj(a_[static_cast<std::size_t>(j) * n_ + i]);
            defect2 += std::norm(d);
        }
    }
    if (defect2 > 0.0 && std::sqrt(defect2) > 1e-13 * std::sqrt(fro2))
        throw std::invalid_argument("HermitianMatrix: Hermiticity defect too large");
    for (int i = 0; i < n_; ++i) {
        a_[static_cast<std::size_t>(i) * n_ + i] = {a_[static_cast<std::size_t>(i) * n_ + i].real(), 0.0};
        for (int j = i + 1; j < n_; ++j) {
            const cdouble avg =
                0.5 * (a_[static_cast<std::size_t>(i) * n_ + j] +
                       std::conj(a_[static_cast<std::size_t>(j) * n_ + i]));
            a_[static_cast<std::size_t>(i) * n_ + j] = avg;
            a_[static_cast<std::size_t>(j) * n_ + i] = std::conj(avg);
        }
    }
}

HermitianMatrix HermitianMatrix::diagonal(const std::vector<double>& d) {
    HermitianMatrix h(static_cast<int>(d.size()));
    for (int i = 0; i < h.n_; ++i) h.a_[static_cast<std::size_t>(i) * h.n_ + i] = d[i];
    return h;
}

HermitianMatrix HermitianMatrix::identity(int n) {
    return diagonal(std::vector<double>(n, 1.0));
}

double HermitianMatrix::frobenius() const {
    double s = 0.0;
    for (const auto& v : a_) s += std::norm(v);
    return std::sqrt(s);
}

HermitianMatrix HermitianMatrix::add(const HermitianMatrix& o) const {
    if (o.n_ != n_) throw std::invalid_argument("HermitianMatrix::add: dim mismatch");
    HermitianMatrix out(n_);
    for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] + o.a_[i];
    return out;
}

HermitianMatrix HermitianMatrix::subtract(const HermitianMatrix& o) const {
    if (o.n_ != n_) throw std::invalid_argument("HermitianMatrix::subtract: dim mismatch");
    HermitianMatrix out(n_);
    for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] - o.a_[i];
    return out;
}

HermitianMatrix HermitianMatrix::conjugate_by(const ComplexMatrix& u) const {
    if (u.rows != n_ || u.cols != n_)
        throw std::invalid_argument("HermitianMatrix::conjugate_by: dim mismatch");
    // tmp = U * H
    ComplexMatrix tmp(n_, n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) {
            cdouble s = 0.0;
            for (int k = 0; k < n_; ++k) s += u.at(i, k) * (*this)(k, j);
            tmp.at(i, j) = s;
        }
    std::vector<cdouble> out(static_cast<std::size_t>(n_) * n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) {
            cdouble s = 0.0;
            for (int k = 0; k < n_; ++k) s += tmp.at(i, k) * std::conj(u.at(j, k));
            out[static_cast<std::size_t>(i) * n_ + j] = s;
        }
    return HermitianMatrix(n_, std::move(out));
}

double trace(const HermitianMatrix& h) {
    double s = 0.0;
    for (int i = 0; i < h.dim(); ++i) s += h(i, i).real();
    return s;
}

HermitianMatrix gram(const ComplexMatrix& g) {
    const int n = g.rows;
    std::vector<cdouble> out(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            cdouble s = 0.0;
            for (int k = 0; k < g.cols; ++k) s += g.at(i, k) * std::conj(g.at(j, k));
            out[static_cast<std::size_t>(i) * n + j] = s;
            out[static_cast<std::size_t>(j) * n + i] = std::conj(s);
        }
    return HermitianMatrix(n, std::move(out));
}

}  // namespace lup
