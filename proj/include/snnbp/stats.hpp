// Small statistics helpers for Monte Carlo runs.
#pragma once

#include <cmath>
#include <utility>

namespace snnbp {

/// Wilson score interval for a binomial proportion. Returns {low, high};
/// {0, upper bound} when no successes were observed.
inline std::pair<double, double> wilson_interval(long long successes, long long trials,
                                                 double z = 1.959963984540054) {
    if (trials <= 0) return {0.0, 1.0};
    if (successes == 0) {
        const double n = static_cast<double>(trials);
        return {0.0, (z * z) / (n + z * z)};
    }
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = (z / denom) * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
    double low = center - half, high = center + half;
    if (low < 0.0) low = 0.0;
    if (high > 1.0) high = 1.0;
    return {low, high};
}

/// Gaussian tail probability Q(x) = P(N(0,1) > x).
inline double q_function(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

}  // namespace snnbp
