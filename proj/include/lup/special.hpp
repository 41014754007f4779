#pragma once

namespace lup {

// log Gamma(x) for x > 0, Lanczos approximation (g = 7, 9 terms).
// Absolute error in log below ~1e-14 over the positive axis, which keeps
// the gamma-function value accurate to better than 1e-13 relative.
double log_gamma(double x);

// Regularized lower incomplete gamma P(a, x) = gamma(a,x)/Gamma(a), a > 0.
double regularized_gamma_p(double a, double x);

// Survival function of the Kolmogorov distribution, Q(lambda) = 2 sum_{k>=1}
// (-1)^{k-1} exp(-2 k^2 lambda^2).
double kolmogorov_q(double lambda);

// Critical value lambda with Q(lambda) = alpha.
double kolmogorov_critical(double alpha);

}  // namespace lup
