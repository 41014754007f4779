#include "lup/polybasis.hpp"

#include <cmath>
#include <stdexcept>

#include "lup/special.hpp"

namespace lup {

WeightParams::WeightParams(double a_, double b_) : a(a_), b(b_) {
    if (!(a > -1.0)) throw std::invalid_argument("WeightParams: a must be > -1");
    if (!(b > 0.0)) throw std::invalid_argument("WeightParams: b must be > 0");
}

LogValue weight_gamma(const WeightParams& p, double x) {
    if (x <= 0.0) return LogValue::zero();
    const double lm =
        (p.a + 1.0) * std::log(p.b) + p.a * std::log(x) - p.b * x - log_gamma(p.a + 1.0);
    return {1, lm};
}

LogValue kappa(double step, int N, double x) {
    if (N < 1) throw std::invalid_argument("kappa: N must be positive");
    if (!(static_cast<double>(N) * step > 0.0))
        throw std::invalid_argument("kappa: N*step must be positive");
    return weight_gamma(WeightParams(static_cast<double>(N) * step - 1.0, 1.0), x);
}

void laguerre_monic_all(int kmax, double a, double x, std::span<LogValue> out) {
    if (kmax < 0) throw std::invalid_argument("laguerre_monic_all: k must be >= 0");
    if (!(a > -1.0)) throw std::invalid_argument("laguerre_monic_all: a must be > -1");
    if (out.size() < static_cast<std::size_t>(kmax) + 1)
        throw std::invalid_argument("laguerre_monic_all: output span too small");
    out[0] = LogValue::one();
    if (kmax == 0) return;
    out[1] = LogValue::from_double(x - (a + 1.0));
    for (int n = 1; n < kmax; ++n) {
        // L_{n+1} = (x - (2n+a+1)) L_n - n(n+a) L_{n-1}
        const LogValue lin = LogValue::from_double(x - (2.0 * n + a + 1.0));
        const LogValue coef = LogValue::from_double(static_cast<double>(n) * (n + a));
        out[n + 1] = lin * out[n] - coef * out[n - 1];
    }
}

LogValue laguerre_monic(int k, double a, double x) {
    if (k < 0) throw std::invalid_argument("laguerre_monic: k must be >= 0");
    if (!(a > -1.0)) throw std::invalid_argument("laguerre_monic: a must be > -1");
    LogValue buf[2];
    if (k <= 1) {
        laguerre_monic_all(k, a, x, std::span<LogValue>(buf, k + 1));
        return buf[k];
    }
    LogValue prev = LogValue::one();
    LogValue cur = LogValue::from_double(x - (a + 1.0));
    for (int n = 1; n < k; ++n) {
        const LogValue lin = LogValue::from_double(x - (2.0 * n + a + 1.0));
        const LogValue coef = LogValue::from_double(static_cast<double>(n) * (n + a));
        const LogValue next = lin * cur - coef * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

void laguerre_monic_with_deriv(int k, double a, double x, LogValue& value, LogValue& deriv) {
    if (k < 0) throw std::invalid_argument("laguerre_monic_with_deriv: k must be >= 0");
    if (!(a > -1.0)) throw std::invalid_argument("laguerre_monic_with_deriv: a must be > -1");
    LogValue p = LogValue::one(), dp = LogValue::zero();
    if (k == 0) {
        value = p;
        deriv = dp;
        return;
    }
    LogValue c = LogValue::from_double(x - (a + 1.0)), dc = LogValue::one();
    for (int n = 1; n < k; ++n) {
        const LogValue lin = LogValue::from_double(x - (2.0 * n + a + 1.0));
        const LogValue coef = LogValue::from_double(static_cast<double>(n) * (n + a));
        const LogValue next = lin * c - coef * p;
        const LogValue dnext = c + lin * dc - coef * dp;
        p = c;
        dp = dc;
        c = next;
        dc = dnext;
    }
    value = c;
    deriv = dc;
}

void hermite_monic_all(int kmax, double x, std::span<LogValue> out) {
    if (kmax < 0) throw std::invalid_argument("hermite_monic_all: k must be >= 0");
    if (out.size() < static_cast<std::size_t>(kmax) + 1)
        throw std::invalid_argument("hermite_monic_all: output span too small");
    out[0] = LogValue::one();
    if (kmax == 0) return;
    out[1] = LogValue::from_double(x);
    const LogValue xv = LogValue::from_double(x);
    for (int n = 1; n < kmax; ++n) {
        // H_{k+1} = x H_k - (k/2) H_{k-1}
        const LogValue coef = LogValue::from_double(0.5 * n);
        out[n + 1] = xv * out[n] - coef * out[n - 1];
    }
}

LogValue hermite_monic(int k, double x) {
    if (k < 0) throw std::invalid_argument("hermite_monic: k must be >= 0");
    LogValue prev = LogValue::one();
    if (k == 0) return prev;
    LogValue cur = LogValue::from_double(x);
    const LogValue xv = cur;
    for (int n = 1; n < k; ++n) {
        const LogValue coef = LogValue::from_double(0.5 * n);
        const LogValue next = xv * cur - coef * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

LogValue laguerre_norm(int ell, double a) {
    if (ell < 0) throw std::invalid_argument("laguerre_norm: ell must be >= 0");
    if (!(a > -1.0)) throw std::invalid_argument("laguerre_norm: a must be > -1");
    const double lm = log_gamma(ell + 1.0) + log_gamma(a + ell + 1.0) - log_gamma(a + 1.0);
    return {1, lm};
}

LogValue hermite_norm(int k) {
    if (k < 0) throw std::invalid_argument("hermite_norm: k must be >= 0");
    const double lm = 0.5 * std::log(M_PI) + log_gamma(k + 1.0) - k * std::log(2.0);
    return {1, lm};
}

}  // namespace lup
