#pragma once

#include <span>
#include <vector>

#include "tailgate/sample.hpp"

namespace tailgate {
namespace geometry {

// L_p exponent; p in (0,1) is a quasi-norm (homogeneous, no triangle
// inequality) and is handled by the same power formula.
struct NormSpec {
    double p = 1.0;
    explicit NormSpec(double p_);
    NormSpec() = default;
};

double lp_norm(std::span<const double> x, const NormSpec& norm);

// Radii plus unit-norm angle rows; r[i] * angle_row(i) reconstructs the
// original observation. Angles are stored in full d-vector form so the
// downstream distance kernel is dimension-agnostic.
struct PolarSample {
    std::vector<double> radii;   // n
    std::vector<double> angles;  // row-major n x d, each row unit L_p norm
    NormSpec norm;
    std::size_t n = 0;
    std::size_t d = 0;

    double angle(std::size_t i, std::size_t j) const { return angles[i * d + j]; }
    const double* angle_row(std::size_t i) const { return angles.data() + i * d; }
};

// Polar decomposition (R, Theta) = (||X||_p, X/||X||_p), row order preserved.
// A zero row is an error naming the row (1-based).
PolarSample to_polar(const Sample& sample, const NormSpec& norm);

// Column-wise marginal standardization to an approximately unit Frechet
// scale: Z = 1/log(n/(rank - 0.5)) with ascending ranks, ties broken by
// first occurrence. Invariant under strictly increasing marginal maps.
Sample rank_transform(const Sample& sample);

// First angle coordinate X1/(X1+X2) for d=2, p=1 data.
std::vector<double> pseudo_angle_2d(const PolarSample& polar);

// Pseudo-angle for general p in 2D: X1^p/(X1^p + X2^p) = Theta_1^p. Equals
// the first angle coordinate when p = 1.
std::vector<double> pseudo_angle_power(const PolarSample& polar);

}  // namespace geometry
}  // namespace tailgate
