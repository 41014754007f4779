#pragma once

#include <cmath>
#include <limits>
#include <span>

namespace lup {

// Signed log-magnitude number: value = sign * exp(logmag), sign in {-1,0,+1}.
// sign == 0 is exact zero; logmag is ignored in that state.
//
// All weight/polynomial/kernel arithmetic runs in this representation because
// the gamma-weight index reaches several hundred at modest parameters and
// Gamma(a) overflows plain doubles near a = 171.
struct LogValue {
    int sign = 0;
    double logmag = -std::numeric_limits<double>::infinity();

    constexpr LogValue() = default;
    constexpr LogValue(int s, double lm) : sign(s), logmag(lm) {}

    static constexpr LogValue zero() { return {}; }
    static constexpr LogValue one() { return {1, 0.0}; }

    static LogValue from_double(double v) {
        if (v == 0.0) return zero();
        return {v > 0.0 ? 1 : -1, std::log(std::fabs(v))};
    }

    // sign * exp(logmag); overflows to +-inf, underflows to 0.
    double to_double() const {
        if (sign == 0) return 0.0;
        return static_cast<double>(sign) * std::exp(logmag);
    }

    bool is_zero() const { return sign == 0; }

    LogValue abs() const { return sign == 0 ? zero() : LogValue{1, logmag}; }

    friend LogValue operator-(LogValue v) { return {-v.sign, v.logmag}; }

    friend LogValue operator*(LogValue a, LogValue b) {
        if (a.sign == 0 || b.sign == 0) return zero();
        return {a.sign * b.sign, a.logmag + b.logmag};
    }

    friend LogValue operator/(LogValue a, LogValue b) {
        // division by zero is a caller bug; propagate inf rather than trap
        if (a.sign == 0) return zero();
        return {a.sign * b.sign, a.logmag - b.logmag};
    }

    friend LogValue operator+(LogValue a, LogValue b) {
        if (a.sign == 0) return b;
        if (b.sign == 0) return a;
        const LogValue& hi = (a.logmag >= b.logmag) ? a : b;
        const LogValue& lo = (a.logmag >= b.logmag) ? b : a;
        const double d = lo.logmag - hi.logmag;  // <= 0
        if (hi.sign == lo.sign) return {hi.sign, hi.logmag + std::log1p(std::exp(d))};
        if (d == 0.0) return zero();
        return {hi.sign, hi.logmag + std::log1p(-std::exp(d))};
    }

    friend LogValue operator-(LogValue a, LogValue b) { return a + (-b); }

    friend bool operator==(LogValue a, LogValue b) {
        if (a.sign != b.sign) return false;
        return a.sign == 0 || a.logmag == b.logmag;
    }
};

inline LogValue pow(LogValue v, double p) {
    if (v.sign == 0) return LogValue::zero();
    // only positive bases take non-integer powers
    return {v.sign < 0 ? -1 : 1, v.logmag * p};
}

// Signed sum of many log-space terms: factor out the largest magnitude, then
// accumulate the rescaled terms in plain doubles.
inline LogValue log_sum(std::span<const LogValue> terms) {
    double top = -std::numeric_limits<double>::infinity();
    for (const auto& t : terms)
        if (t.sign != 0 && t.logmag > top) top = t.logmag;
    if (!std::isfinite(top)) return LogValue::zero();
    double acc = 0.0;
    for (const auto& t : terms)
        if (t.sign != 0) acc += static_cast<double>(t.sign) * std::exp(t.logmag - top);
    if (acc == 0.0) return LogValue::zero();
    return {acc > 0.0 ? 1 : -1, top + std::log(std::fabs(acc))};
}

}  // namespace lup
