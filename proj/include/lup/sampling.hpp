#pragma once

#include "lup/hermitian.hpp"
#include "lup/rng.hpp"

namespace lup {

// rows x cols matrix of i.i.d. centred complex Gaussians with E|g|^2 = variance.
ComplexMatrix sample_ginibre(int rows, int cols, double variance, RngStream& rng);

// LUE random matrix G G^dagger with G of size N x (N+a) and entry variance 1/b.
// The factorisation construction needs integer a >= 0.
HermitianMatrix sample_lue(int N, int a, double b, RngStream& rng);

// Random Hermitian matrix with independent Gaussian entries (GUE-type),
// used as a generic test direction for characteristic functions.
HermitianMatrix sample_hermitian_gaussian(int N, double scale, RngStream& rng);

// Gamma(shape, rate) variate, shape >= 1, Marsaglia-Tsang squeeze.
double sample_gamma(double shape, double rate, RngStream& rng);

}  // namespace lup
