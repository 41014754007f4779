#pragma once

#include <complex>
#include <vector>

namespace lup {

using cdouble = std::complex<double>;

// Dense rows x cols complex matrix, row-major. Plain aggregate used for
// Gaussian factors and eigenvector stacks.
struct ComplexMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<cdouble> a;

    ComplexMatrix() = default;
    ComplexMatrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}

    cdouble& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    const cdouble& at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
};

// Immutable N x N complex Hermitian matrix. Construction verifies the
// Hermiticity defect and stores the exact Hermitian average, so entries(i,j)
// == conj(entries(j,i)) holds to the last bit afterwards.
class HermitianMatrix {
  public:
    explicit HermitianMatrix(int n);  // zero matrix
    HermitianMatrix(int n, std::vector<cdouble> entries);

    static HermitianMatrix diagonal(const std::vector<double>& d);
    static HermitianMatrix identity(int n);

    int dim() const { return n_; }
    const cdouble& operator()(int i, int j) const {
        return a_[static_cast<std::size_t>(i) * n_ + j];
    }
    const std::vector<cdouble>& data() const { return a_; }

    double frobenius() const;

    HermitianMatrix add(const HermitianMatrix& o) const;
    HermitianMatrix subtract(const HermitianMatrix& o) const;
    // U * H * U^dagger for a unitary U (square ComplexMatrix)
    HermitianMatrix conjugate_by(const ComplexMatrix& u) const;

  private:
    int n_;
    std::vector<cdouble> a_;
};

// Sum of diagonal entries' real parts. The imaginary residue of a valid
// Hermitian matrix is exactly zero after construction.
double trace(const HermitianMatrix& h);

// G * G^dagger as a Hermitian matrix.
HermitianMatrix gram(const ComplexMatrix& g);

}  // namespace lup
