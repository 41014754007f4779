#pragma once

#include <complex>
#include <span>
#include <utility>
#include <vector>

#include "lup/hermitian.hpp"
#include "lup/rng.hpp"

namespace lup {

// One realisation of the matrix process at the requested integer times.
// Only requested times are stored; eigen_cache[k] holds the ascending
// spectrum of states[k].
struct Trajectory {
    int N = 0;
    std::vector<int> times;
    std::vector<HermitianMatrix> states;
    std::vector<std::vector<double>> eigen_cache;
};

// L(0) = 0, L(t) = L(t-1) + X(t) with i.i.d. X(t) from the (a=0, b=1)
// ensemble. record_times must be a nonempty ascending subset of {1..t_max};
// time is an integer throughout, there is no continuous-time extension to
// offer for N >= 2.
Trajectory simulate_lup(int N, int t_max, const std::vector<int>& record_times, RngStream& rng);

// Closed-form characteristic function at a direction T with the given
// eigenvalues: prod_j (1 - i t_j / b)^{-(N+a)}.
std::complex<double> characteristic_function_lue(std::span<const double> eigs_T, int N, double a,
                                                 double b);

struct EcfEstimate {
    std::complex<double> mean;
    double std_error;  // combined per-component error, sqrt(Var(Re)+Var(Im))/sqrt(n)
};

// Sample mean of exp(i tr(X T)) over the provided matrices.
EcfEstimate empirical_characteristic(std::span<const HermitianMatrix> samples,
                                     const HermitianMatrix& T);

// (X + Y, Z) with X, Y, Z independent draws of index a, a', and a+a'+N; the
// two components are equal in law.
std::pair<HermitianMatrix, HermitianMatrix> sample_sum_pair(int N, int a, int a_prime, double b,
                                                            RngStream& rng);

}  // namespace lup
