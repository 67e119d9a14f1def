#include "tailgate/angular.hpp"

#include <algorithm>
#include <cmath>

#include "tailgate/error.hpp"
#include "tailgate/stats.hpp"

namespace tailgate {
namespace stats {

double spearman_rho(std::span<const double> x, std::span<const double> y) {
    auto ranks = [](std::span<const double> v) {
        std::vector<std::size_t> order(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
        std::vector<double> r(v.size());
        for (std::size_t k = 0; k < v.size(); ++k) r[order[k]] = static_cast<double>(k + 1);
        return r;
    };
    auto rx = ranks(x), ry = ranks(y);
    double mx = mean(rx), my = mean(ry);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        sxy += (rx[i] - mx) * (ry[i] - my);
        sxx += (rx[i] - mx) * (rx[i] - mx);
        syy += (ry[i] - my) * (ry[i] - my);
    }
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace stats

namespace angular {

namespace {

std::vector<std::size_t> exceedance_indices(const geometry::PolarSample& polar, double r) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < polar.n; ++i)
        if (polar.radii[i] > r) idx.push_back(i);
    if (idx.size() < 10) throw InsufficientExceedances(idx.size(), 10);
    return idx;
}

std::vector<double> uniform_grid(std::size_t g) {
    std::vector<double> grid(g);
    for (std::size_t i = 0; i < g; ++i)
        grid[i] = static_cast<double>(i) / static_cast<double>(g - 1);
    return grid;
}

std::vector<double> ecdf_on_grid(const std::vector<double>& sorted,
                                 const std::vector<double>& grid) {
    std::vector<double> out(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        auto it = std::upper_bound(sorted.begin(), sorted.end(), grid[i]);
        out[i] = static_cast<double>(it - sorted.begin()) / static_cast<double>(sorted.size());
    }
    return out;
}

std::vector<double> pseudo_angles_at(const geometry::PolarSample& polar,
                                     const std::vector<std::size_t>& idx) {
    const double p = polar.norm.p;
    std::vector<double> w(idx.size());
    for (std::size_t a = 0; a < idx.size(); ++a) {
        double t0 = std::pow(polar.angle(idx[a], 0), p);
        double t1 = std::pow(polar.angle(idx[a], 1), p);
        w[a] = t0 / (t0 + t1);
    }
    std::sort(w.begin(), w.end());
    return w;
}

}  // namespace

AngularEstimate angular_ecdf(const geometry::PolarSample& polar, double radius_threshold,
                             std::size_t grid_points) {
    auto idx = exceedance_indices(polar, radius_threshold);
    AngularEstimate est;
    est.n_used = idx.size();
    est.d = polar.d;
    est.threshold_radius = radius_threshold;
    est.grid = uniform_grid(grid_points);
    if (polar.d == 2) {
        est.sorted_angles = pseudo_angles_at(polar, idx);
        est.ecdf = ecdf_on_grid(est.sorted_angles, est.grid);
    } else {
        est.marginal_ecdfs.resize(polar.d);
        for (std::size_t k = 0; k < polar.d; ++k) {
            std::vector<double> col(idx.size());
            for (std::size_t a = 0; a < idx.size(); ++a) col[a] = polar.angle(idx[a], k);
            std::sort(col.begin(), col.end());
            est.marginal_ecdfs[k] = ecdf_on_grid(col, est.grid);
        }
    }
    return est;
}

AngularEstimate angular_kde(const geometry::PolarSample& polar, double radius_threshold,
                            double bandwidth, std::size_t grid_points) {
    if (polar.d != 2) throw DataError("angular_kde requires d = 2");
    AngularEstimate est = angular_ecdf(polar, radius_threshold, grid_points);
    const auto& w = est.sorted_angles;
    const double n = static_cast<double>(w.size());

    double h = bandwidth;
    if (h <= 0.0) {
        double sd = std::sqrt(stats::variance(w));
        double iqr = stats::quantile_sorted(w, 0.75) - stats::quantile_sorted(w, 0.25);
        double scale = std::min(sd, iqr / 1.34);
        if (scale <= 0.0) scale = std::max(sd, 1e-3);
        h = 0.9 * scale * std::pow(n, -0.2);
        if (h <= 0.0) h = 1e-3;
    }
    est.bandwidth = h;

    const double inv = 1.0 / (h * std::sqrt(2.0 * 3.14159265358979323846));
    auto kern = [&](double z) { return inv * std::exp(-0.5 * z * z / (h * h)); };
    est.density.resize(est.grid.size());
    for (std::size_t g = 0; g < est.grid.size(); ++g) {
        double x = est.grid[g], s = 0.0;
        for (double wi : w)
            s += kern(x - wi) + kern(x + wi) + kern(x - (2.0 - wi));  // reflect at 0 and 1
        est.density[g] = s / n;
    }
    return est;
}

namespace {

// log of the shape at log(theta) = lt, for theta <= 1/2. Works down to
// denormal theta where the direct power formula overflows.
double log_shape_impl(double lt, double gamma) {
    double theta = std::exp(lt);
    double l1m = theta > 1e-8 ? std::log1p(-theta) : -theta;
    // log(theta^(-1/g) + (1-theta)^(-1/g)) with the big term factored out
    double big = -lt / gamma, small = -l1m / gamma;
    double log_sum = big + std::log1p(std::exp(small - big));
    return std::log((1.0 - gamma) / gamma) - (gamma + 1.0) / gamma * (lt + l1m) +
           (gamma - 2.0) * log_sum;
}

}  // namespace

double logistic_angular_density_shape(double theta, double gamma) {
    if (!(gamma > 0.0 && gamma < 1.0)) throw ParameterError("gamma must be in (0,1)");
    if (!(theta > 0.0 && theta < 1.0))
        throw ParameterError("angular density is evaluated on the open interval (0,1)");
    double m = std::min(theta, 1.0 - theta);  // the shape is symmetric
    return std::exp(log_shape_impl(std::log(m), gamma));
}

LogisticAngularLimit::LogisticAngularLimit(double gamma) : gamma_(gamma) {
    if (!(gamma > 0.0 && gamma < 1.0)) throw ParameterError("gamma must be in (0,1)");
    // Near 0 the shape behaves like theta^(-a) with a = (2g-1)/g; the
    // substitution theta = u^k turns the integrand into u^(k(1-a)-1), and
    // k(1-a) >= 3 keeps it twice differentiable at the origin.
    double a = (2.0 * gamma - 1.0) / gamma;
    power_ = std::max(1.0, std::ceil(3.0 / (1.0 - a)));
    u_max_ = std::pow(0.5, 1.0 / power_);

    constexpr std::size_t kNodes = 1 << 14;
    cum_.assign(kNodes + 1, 0.0);
    const double du = u_max_ / static_cast<double>(kNodes);
    // Entirely in log space: theta = u^k underflows long before the
    // integrand (which is bounded) stops mattering.
    auto integrand = [&](double u) {
        if (u <= 0.0) return 0.0;
        double lu = std::log(u);
        double lt = power_ * lu;  // log(theta) <= log(1/2)
        double v = log_shape_impl(lt, gamma_) + std::log(power_) + (power_ - 1.0) * lu;
        return v < -700.0 ? 0.0 : std::exp(v);
    };
    double prev = integrand(0.0);
    for (std::size_t i = 1; i <= kNodes; ++i) {
        double cur = integrand(static_cast<double>(i) * du);
        cum_[i] = cum_[i - 1] + 0.5 * (prev + cur) * du;
        prev = cur;
    }
    norm_ = 2.0 * cum_.back();  // symmetric about 1/2
}

double LogisticAngularLimit::pdf(double theta) const {
    return logistic_angular_density_shape(theta, gamma_) / norm_;
}

double LogisticAngularLimit::cdf(double theta) const {
    if (theta <= 0.0) return 0.0;
    if (theta >= 1.0) return 1.0;
    if (theta > 0.5) return 1.0 - cdf(1.0 - theta);
    double u = std::pow(theta, 1.0 / power_);
    double pos = u / u_max_ * static_cast<double>(cum_.size() - 1);
    std::size_t lo = std::min(static_cast<std::size_t>(pos), cum_.size() - 2);
    double w = pos - static_cast<double>(lo);
    double integral = (1.0 - w) * cum_[lo] + w * cum_[lo + 1];
    return integral / norm_;
}

}  // namespace angular
}  // namespace tailgate
