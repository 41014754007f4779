#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "lup/report.hpp"

namespace lup {

enum class MomentMethod { quadrature, monte_carlo };

// Moment identity: gamma-ratio closed form against the (X, X+Z) gamma-pair
// oracle, either by tensor quadrature or by Monte Carlo. Quadrature mode
// reports the max relative discrepancy over the (k, l) grid; Monte Carlo
// mode reports max |closed - mc| / (4 SE), tolerance 1.
VerificationReport check_moments(int N, int t, int s, int k_max, MomentMethod method,
                                 std::uint64_t n_samples, double tol, std::uint64_t seed,
                                 int workers);

// Moment determinant and the h-constants. Entries are exact integers, the
// direct determinant runs in 128-bit fraction-free elimination, so both
// routes are compared without floating-point noise in the elimination.
VerificationReport check_moment_determinant(int N, int t, int s, int n_max, double tol);

// Bi-orthogonality of the polynomial families under the kappa pairing;
// with u, the intermediate-time transformed families instead. Normalized
// report: max(diag_rel/tol_diag, off/(h_max tol_off)) against 1.
VerificationReport check_biorthogonality(int N, int t, int s, int k_max, std::optional<int> u,
                                         double tol_diag, double tol_off);

// Convolution semigroup of the step density on the spec'd grid.
VerificationReport check_kappa_convolution(double tol);

// Matrix addition law: two-sample KS on trace and extreme eigenvalues of
// sum vs reference, plus the empirical characteristic function against the
// determinant closed form at 5 random directions. Normalized against 1.
VerificationReport check_sum_property(int N, int a, int a_prime, double b,
                                      std::uint64_t n_pairs, std::uint64_t seed, int workers);

// Determinantal-structure Monte Carlo checks.
// times = {t}: 1-point intensity vs the equal-time kernel diagonal, z-score
// per bin. times = {t, t}: equal-time pair intensity vs the 2x2 kernel
// determinant. times = {s, t}, s < t: cross-time rectangle pair counts vs
// the extended-kernel determinant integral. Normalized max|z|/4 against 1.
VerificationReport estimate_correlations_mc(int N, const std::vector<int>& times,
                                            std::uint64_t n_traj, int bins, std::uint64_t seed,
                                            int workers);

struct ScalePoint {
    double y, x;
    int t, s;
};

// Long-time scaling of the Laguerre kernel onto the Hermite kernel:
// pointwise errors must decay along gammas and the log-log slope of the
// worst-point error must sit in [-0.7, -0.3].
VerificationReport check_scaling_limit(int N, const std::vector<double>& gammas,
                                       const std::vector<ScalePoint>& points);

enum class LemmaKind { L2H, norm, weight };

// Scaled-parameter limits feeding the kernel scaling proof: Laguerre ->
// Hermite polynomials, norm ratios, gamma weight -> gaussian. Errors must
// decay monotonically over a_values with final error below final_tol.
VerificationReport check_lemma_limits(LemmaKind kind, const std::vector<double>& a_values,
                                      double final_tol);

}  // namespace lup
