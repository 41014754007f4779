#pragma once

#include <vector>

#include "lup/hermitian.hpp"

namespace lup {

struct EigenDecomposition {
    std::vector<double> values;  // ascending
    ComplexMatrix vectors;       // columns match values
};

// All eigenvalues of a Hermitian matrix, ascending, via cyclic complex
// Jacobi sweeps. Converged when the off-diagonal Frobenius norm drops below
// tol * ||H||_F; throws after 60 sweeps without convergence.
std::vector<double> eigenvalues_hermitian(const HermitianMatrix& h, double tol = 1e-13);

EigenDecomposition eigen_hermitian(const HermitianMatrix& h, double tol = 1e-13);

}  // namespace lup
