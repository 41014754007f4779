#include "lup/airy.hpp"

#include <cmath>
#include <stdexcept>

namespace lup {

namespace {

constexpr double kAi0 = 0.35502805388781723926;    // 3^{-2/3}/Gamma(2/3)
constexpr double kAip0 = -0.25881940379280679841;  // -3^{-1/3}/Gamma(1/3)
constexpr double kLoBound = -15.0;
constexpr double kHiBound = 30.0;

struct Pair {
    double value;
    double deriv;
};

// Maclaurin series: Ai = Ai(0) f + Ai'(0) g with f'' = x f, g'' = x g,
// f(0)=1, g(0)=0, g'(0)=1.
Pair series(double x) {
    const double x3 = x * x * x;
    double f_term = 1.0, f = 1.0, fp = 0.0;
    double g_term = x, g = x, gp = 1.0;
    for (int k = 1; k < 80; ++k) {
        f_term *= x3 / ((3.0 * k) * (3.0 * k - 1.0));
        f += f_term;
        fp += f_term * (3.0 * k) / x;  // d/dx of c_k x^{3k}
        g_term *= x3 / ((3.0 * k) * (3.0 * k + 1.0));
        g += g_term;
        gp += g_term * (3.0 * k + 1.0) / x;
        if (std::fabs(f_term) < 1e-20 && std::fabs(g_term) < 1e-20) break;
    }
    if (x == 0.0) {
        f = 1.0;
        fp = 0.0;
        g = 0.0;
        gp = 1.0;
    }
    return {kAi0 * f + kAip0 * g, kAi0 * fp + kAip0 * gp};
}

// u_k, v_k coefficient streams of DLMF 9.7.1-2.
struct UvStream {
    double u = 1.0, v = 1.0;
    int k = 0;
    void advance() {
        ++k;
        u *= (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) / (216.0 * k * (2.0 * k - 1.0));
        v = u * (6.0 * k + 1.0) / (1.0 - 6.0 * k);
    }
};

Pair asymptotic_positive(double x) {
    const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
    double su = 0.0, sv = 0.0;
    UvStream c;
    double pw = 1.0;  // (-1/zeta)^k
    double prev = 1e300;
    for (int k = 0; k < 40; ++k) {
        if (k > 0) {
            c.advance();
            pw *= -1.0 / zeta;
        }
        const double tu = c.u * pw;
        if (std::fabs(tu) > prev) break;  // divergence onset
        su += tu;
        sv += c.v * pw;
        prev = std::fabs(tu);
        if (prev < 1e-18) break;
    }
    const double q = std::pow(x, 0.25);
    const double common = std::exp(-zeta) / (2.0 * std::sqrt(M_PI));
    return {common * su / q, -common * q * sv};
}

Pair asymptotic_negative(double x) {
    const double z = -x;
    const double zeta = 2.0 / 3.0 * z * std::sqrt(z);
    double uc = 0.0, us = 0.0, vc = 0.0, vs = 0.0;
    UvStream c;
    double pw = 1.0;  // (1/zeta)^k, alternating handled by (-1)^{k/2}
    double prev = 1e300;
    for (int k = 0; k < 40; ++k) {
        if (k > 0) {
            c.advance();
            pw /= zeta;
        }
        const double mag = c.u * pw;
        if (mag > prev) break;  // divergence onset
        prev = mag;
        const double sgn = (k / 2) % 2 == 0 ? 1.0 : -1.0;
        if (k % 2 == 0) {
            uc += sgn * c.u * pw;
            vs += sgn * c.v * pw;
        } else {
            us += sgn * c.u * pw;
            vc += sgn * c.v * pw;
        }
        if (mag < 1e-18) break;
    }
    const double arg = zeta - 0.25 * M_PI;
    const double cs = std::cos(arg), sn = std::sin(arg);
    const double q = std::pow(z, 0.25);
    const double rpi = std::sqrt(M_PI);
    return {(cs * uc + sn * us) / (rpi * q), (sn * vs - cs * vc) * q / rpi};
}

Pair airy_pair(double x) {
    if (!(x >= kLoBound && x <= kHiBound))
        throw std::domain_error("airy_ai: argument outside supported range [-15, 30]");
    if (x > 6.0) return asymptotic_positive(x);
    if (x < -8.0) return asymptotic_negative(x);
    return series(x);
}

}  // namespace

double airy_ai(double x) { return airy_pair(x).value; }

double airy_ai_prime(double x) { return airy_pair(x).deriv; }

}  // namespace lup
