#pragma once

#include <span>
#include <vector>

#include "lup/log_value.hpp"

namespace lup {

// prod_{k<l} (x_k - x_l); sign tracks the ordering, zero iff two points meet.
LogValue vandermonde(std::span<const double> points);

// Z_{a,b}(N) = N! b^{-N(N-1)} prod_{j=1..N} Gamma(j) Gamma(a+j) / Gamma(a+1).
LogValue log_z_laguerre(int N, double a, double b);

// Joint eigenvalue density: Delta^2 prod w_{a,b} / Z_{a,b}(N).
LogValue eig_jpdf(std::span<const double> points, int N, double a, double b);

// Transition density of the eigenvalue process from time s to t > s:
// (1/N!) (Delta(y)/Delta(x)) det[kappa_{t-s}(y_k - x_l)].
// x must have distinct entries; coincident y degenerate continuously to 0.
LogValue transition_density(std::span<const double> y, std::span<const double> x, int t, int s,
                            int N);

// Multi-time joint density at strictly increasing positive integer times.
LogValue spatiotemporal_jpdf(std::span<const std::vector<double>> configs,
                             std::span<const int> times, int N);

// Signed determinant of a matrix given in log space. Each row is rescaled by
// its largest magnitude before an ordinary partially pivoted LU, so widely
// scaled kernels neither overflow nor underflow.
LogValue log_det(std::vector<std::vector<LogValue>> m);

}  // namespace lup
