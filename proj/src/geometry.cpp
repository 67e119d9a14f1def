#include "tailgate/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tailgate/error.hpp"

namespace tailgate {
namespace geometry {

NormSpec::NormSpec(double p_) : p(p_) {
    if (!(p > 0.0) || !std::isfinite(p)) throw ParameterError("norm exponent p must be positive");
}

double lp_norm(std::span<const double> x, const NormSpec& norm) {
    const double p = norm.p;
    if (p == 1.0) {
        double s = 0.0;
        for (double v : x) s += std::fabs(v);
        return s;
    }
    if (p == 2.0) {
        double s = 0.0;
        for (double v : x) s += v * v;
        return std::sqrt(s);
    }
    double s = 0.0;
    for (double v : x) s += std::pow(std::fabs(v), p);
    return std::pow(s, 1.0 / p);
}

PolarSample to_polar(const Sample& sample, const NormSpec& norm) {
    PolarSample out;
    out.norm = norm;
    out.n = sample.n;
    out.d = sample.d;
    out.radii.resize(sample.n);
    out.angles.resize(sample.n * sample.d);
    for (std::size_t i = 0; i < sample.n; ++i) {
        std::span<const double> row(sample.row(i), sample.d);
        for (double v : row)
            if (!std::isfinite(v)) throw DataError("non-finite value in row " + std::to_string(i + 1));
        double r = lp_norm(row, norm);
        if (r == 0.0) throw DataError("zero row at index " + std::to_string(i + 1));
        out.radii[i] = r;
        for (std::size_t j = 0; j < sample.d; ++j) out.angles[i * sample.d + j] = row[j] / r;
    }
    return out;
}

Sample rank_transform(const Sample& sample) {
    if (sample.n < 2) throw DataError("rank_transform needs at least 2 rows");
    Sample out = sample;
    const double n = static_cast<double>(sample.n);
    std::vector<std::size_t> order(sample.n);
    for (std::size_t j = 0; j < sample.d; ++j) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return sample(a, j) < sample(b, j);
        });
        for (std::size_t k = 0; k < sample.n; ++k) {
            double rank = static_cast<double>(k + 1);
            out(order[k], j) = 1.0 / std::log(n / (rank - 0.5));
        }
    }
    return out;
}

std::vector<double> pseudo_angle_2d(const PolarSample& polar) {
    if (polar.d != 2) throw DataError("pseudo_angle_2d requires d = 2, got d = " + std::to_string(polar.d));
    if (polar.norm.p != 1.0) throw ParameterError("pseudo_angle_2d requires the L1 norm");
    std::vector<double> out(polar.n);
    for (std::size_t i = 0; i < polar.n; ++i) out[i] = polar.angle(i, 0);
    return out;
}

std::vector<double> pseudo_angle_power(const PolarSample& polar) {
    if (polar.d != 2) throw DataError("pseudo_angle_power requires d = 2, got d = " + std::to_string(polar.d));
    const double p = polar.norm.p;
    std::vector<double> out(polar.n);
    for (std::size_t i = 0; i < polar.n; ++i) {
        // Theta_1^p / (Theta_1^p + Theta_2^p) with the denominator written
        // out, which tolerates rows whose norm is 1 only to rounding.
        double a = std::pow(polar.angle(i, 0), p);
        double b = std::pow(polar.angle(i, 1), p);
        out[i] = a / (a + b);
    }
    return out;
}

}  // namespace geometry
}  // namespace tailgate
