#pragma once

namespace lup {

// Airy function of the first kind and its derivative. Supported range
// [-15, 30], absolute error below 1e-10 throughout; out-of-range arguments
// throw. Maclaurin series on [-8, 6], DLMF 9.7 asymptotic expansions outside.
double airy_ai(double x);
double airy_ai_prime(double x);

}  // namespace lup
