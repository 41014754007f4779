#pragma once

#include <span>

#include "lup/log_value.hpp"

namespace lup {

// Position/time pair fed to extended kernels. The Laguerre kernel needs
// integer t >= 1; the Hermite, sine and Airy kernels take real t > 0.
struct SpaceTimePoint {
    double x;
    double t;
};

enum class KernelFamily { laguerre_extended, hermite_extended, sine_extended, airy_extended };

struct KernelSpec {
    KernelFamily family;
    int N;             // ignored by sine/airy
    double tolerance;  // truncation target, in (0, 1e-3]

    KernelSpec(KernelFamily f, int n, double tol);
};

// Extended Laguerre kernel
//   sum_{k<N} Lt_k(y) Ls_k(x) w_{N(s-1),1}(x) / r_k^{N(s-1)}
//   - 1_{s>t} kappa_{s-t}(x-y)
// with Lt, Ls the monic Laguerre polynomials of index N(t-1), N(s-1).
double kernel_laguerre(const SpaceTimePoint& y, const SpaceTimePoint& x, int N);

// Equal-time kernel through the two-term Christoffel-Darboux identity with
// the confluent derivative form on the diagonal. The two-term quotient is
// normalised by r_{N-1}, which is what reproduces the k-sum.
double kernel_laguerre_cd(double y, double x, int t, int N);

// Extended Hermite kernel of the long-time limit; the s > t branch is the
// negative tail series k >= N, truncated once increments stay below
// tol * |partial| for five consecutive terms (cap 2000, then an error).
double kernel_hermite(const SpaceTimePoint& y, const SpaceTimePoint& x, int N, double tol);

// Extended sine kernel.
double kernel_sine(const SpaceTimePoint& y, const SpaceTimePoint& x, double tol);

// Extended Airy kernel. Positions must stay inside the supported Airy range
// after shifts; the s > t branch throws if its tail bound cannot meet tol.
double kernel_airy(const SpaceTimePoint& y, const SpaceTimePoint& x, double tol);

// K(p_i | p_j) for the chosen family.
double kernel_eval(const KernelSpec& spec, const SpaceTimePoint& y, const SpaceTimePoint& x);

// det[K(p_i | p_j)] over up to 8 space-time points.
double correlation_det(std::span<const SpaceTimePoint> points, const KernelSpec& spec);

}  // namespace lup
