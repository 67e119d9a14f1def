#pragma once

#include <optional>
#include <vector>

#include "tailgate/geometry.hpp"

namespace tailgate {
namespace angular {

// Angular distribution above a radius threshold. For d = 2 the estimate is
// over the pseudo-angle X1^p/(X1^p + X2^p) on [0,1]; for d > 2 only the
// per-coordinate marginal ecdfs of the angle are reported.
struct AngularEstimate {
    std::vector<double> grid;                         // evaluation points on [0,1]
    std::vector<double> ecdf;                         // d = 2
    std::vector<std::vector<double>> marginal_ecdfs;  // d > 2, one per coordinate
    std::vector<double> density;                      // KDE values, empty unless requested
    double bandwidth = 0.0;
    std::vector<double> sorted_angles;                // d = 2 pseudo-angles, ascending
    std::size_t n_used = 0;
    std::size_t d = 0;
    double threshold_radius = 0.0;
    std::optional<double> threshold_level;
};

// Empirical cdf of the angle over strict exceedances (at least 10).
AngularEstimate angular_ecdf(const geometry::PolarSample& polar, double radius_threshold,
                             std::size_t grid_points = 201);

// Gaussian KDE of the 2D pseudo-angle with boundary reflection at 0 and 1;
// bandwidth <= 0 means Silverman's rule on the exceedance angles.
AngularEstimate angular_kde(const geometry::PolarSample& polar, double radius_threshold,
                            double bandwidth = -1.0, std::size_t grid_points = 201);

// Shape of the limiting angular density of the bivariate logistic family on
// the pseudo-angle scale (L1 norm): (1-g)/g * (t(1-t))^(-(g+1)/g) *
// (t^(-1/g) + (1-t)^(-1/g))^(g-2). Integrates to 2, not 1; see
// LogisticAngularLimit for the normalized density.
double logistic_angular_density_shape(double theta, double gamma);

// Numerically normalized limit density with a cached cdf. The quadrature
// substitutes theta = u^k to absorb the boundary singularity that appears
// for gamma > 1/2.
class LogisticAngularLimit {
public:
    explicit LogisticAngularLimit(double gamma);
    double pdf(double theta) const;   // normalized; theta in (0,1)
    double cdf(double theta) const;   // theta in [0,1]
    double normalization() const { return norm_; }
    double gamma() const { return gamma_; }

private:
    double gamma_;
    double norm_;      // integral of the shape over (0,1)
    double power_;     // substitution exponent k
    double u_max_;     // (1/2)^(1/k)
    std::vector<double> cum_;  // cumulative shape integral on the u-grid
};

}  // namespace angular
}  // namespace tailgate
