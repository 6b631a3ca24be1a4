#pragma once

#include <cmath>
#include <limits>

namespace pbridge {

// Signed log-magnitude representation. sign==0 iff the value is exactly zero,
// in which case log_magnitude is -inf by convention.
struct LogValue {
    double log_magnitude = -std::numeric_limits<double>::infinity();
    int sign = 0;

    static LogValue zero() { return {}; }
    static LogValue one() { return {0.0, 1}; }

    static LogValue from_double(double v) {
        if (v == 0.0) return zero();
        return {std::log(std::fabs(v)), v > 0 ? 1 : -1};
    }
    static LogValue from_log(double lg, int s = 1) {
        if (s == 0) return zero();
        return {lg, s};
    }

    double to_double() const {
        if (sign == 0) return 0.0;
        return sign * std::exp(log_magnitude);
    }

    LogValue operator*(const LogValue& o) const {
        if (sign == 0 || o.sign == 0) return zero();
        return {log_magnitude + o.log_magnitude, sign * o.sign};
    }
    LogValue operator/(const LogValue& o) const {
        if (sign == 0) return zero();
        return {log_magnitude - o.log_magnitude, sign * o.sign};
    }
};

inline double log_factorial(double k) { return std::lgamma(k + 1.0); }

inline double log_binomial(double m, double k) {
    return log_factorial(m) - log_factorial(k) - log_factorial(m - k);
}

}  // namespace pbridge
