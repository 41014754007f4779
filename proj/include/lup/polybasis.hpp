#pragma once

#include <span>

#include "lup/log_value.hpp"

namespace lup {

// Parameters of the gamma weight w_{a,b}: index a > -1, rate b > 0.
struct WeightParams {
    double a;
    double b;
    WeightParams(double a_, double b_);
};

// w_{a,b}(x) = b^{a+1} x^a e^{-b x} / Gamma(a+1) for x > 0, 0 otherwise.
LogValue weight_gamma(const WeightParams& p, double x);

// kappa_step(x) = w_{N*step - 1, 1}(x), the Gamma(N*step, 1) density.
LogValue kappa(double step, int N, double x);

// Monic Laguerre polynomial of degree k with index a, three-term recurrence.
LogValue laguerre_monic(int k, double a, double x);

// All degrees 0..kmax at once; out must have kmax+1 slots.
void laguerre_monic_all(int kmax, double a, double x, std::span<LogValue> out);

// Value and derivative of the degree-k monic Laguerre polynomial.
void laguerre_monic_with_deriv(int k, double a, double x, LogValue& value, LogValue& deriv);

// Monic Hermite polynomial of degree k.
LogValue hermite_monic(int k, double x);

void hermite_monic_all(int kmax, double x, std::span<LogValue> out);

// Squared norm r_ell^a = ell! Gamma(a+ell+1) / Gamma(a+1).
LogValue laguerre_norm(int ell, double a);

// Squared norm m_k = sqrt(pi) k! / 2^k.
LogValue hermite_norm(int k);

}  // namespace lup
