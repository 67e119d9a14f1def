#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <span>
#include <vector>

namespace tailgate {
namespace stats {

inline double mean(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v;
    return x.empty() ? 0.0 : s / static_cast<double>(x.size());
}

inline double variance(std::span<const double> x) {
    if (x.size() < 2) return 0.0;
    double m = mean(x), s = 0.0;
    for (double v : x) s += (v - m) * (v - m);
    return s / static_cast<double>(x.size() - 1);
}

inline double median(std::vector<double> x) {
    if (x.empty()) return 0.0;
    std::size_t mid = x.size() / 2;
    std::nth_element(x.begin(), x.begin() + mid, x.end());
    double hi = x[mid];
    if (x.size() % 2 == 1) return hi;
    std::nth_element(x.begin(), x.begin() + mid - 1, x.begin() + mid);
    return 0.5 * (x[mid - 1] + hi);
}

inline double quantile_sorted(std::span<const double> sorted, double q) {
    if (sorted.empty()) return 0.0;
    double pos = q * static_cast<double>(sorted.size() - 1);
    std::size_t lo = static_cast<std::size_t>(pos);
    std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    double w = pos - static_cast<double>(lo);
    return (1.0 - w) * sorted[lo] + w * sorted[hi];
}

// Kolmogorov-Smirnov distance between the empirical cdf of an ascending
// sample and a continuous cdf.
inline double ks_distance(std::span<const double> sorted,
                          const std::function<double(double)>& cdf) {
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        double f = cdf(sorted[i]);
        d = std::max(d, std::fabs(static_cast<double>(i + 1) / n - f));
        d = std::max(d, std::fabs(f - static_cast<double>(i) / n));
    }
    return d;
}

// Pearson correlation of the ranks of two equal-length series.
double spearman_rho(std::span<const double> x, std::span<const double> y);

}  // namespace stats
}  // namespace tailgate
