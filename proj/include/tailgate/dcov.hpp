#pragma once

#include <cstddef>
#include <vector>

#include "tailgate/geometry.hpp"

namespace tailgate {
namespace dcov {

// A scalar series u paired with a vector series v (column-major n x d).
// In the threshold pipeline u is log(R/r) and v the angle rows.
struct DCovInput {
    std::vector<double> u;
    std::vector<double> v;  // column-major, size n*d
    std::size_t n = 0;
    std::size_t d = 0;
};

DCovInput make_input(std::vector<double> u, std::vector<double> v_colmajor, std::size_t d);

struct DCovValue {
    double t_n = 0.0;          // statistic, clamped at 0
    std::size_t n = 0;         // points it was computed from
    double clamp_slack = 0.0;  // magnitude removed by the clamp, 0 if none
};

// Literal evaluation of the three-sum computable form with the kappa=1
// weight (mu1~ mu2~ = |x||y|):
//   (1/n^2) sum_ij a_ij b_ij + (1/n^4) sum_ij a_ij sum_kl b_kl
//     - (2/n^3) sum_ijk a_ij b_ik.
// Cubic-time oracle; refuses n > 2000.
DCovValue dcov_naive(const DCovInput& input);

// Same statistic through double-centering, O(n^2) time and O(n) auxiliary
// memory: T = (1/n^2) sum_ij A_ij B_ij with A = a - rowmean - colmean +
// grandmean (likewise B), which expands to the three-sum form.
DCovValue dcov_fast(const DCovInput& input);

// Restricts to strict exceedances R_i > r, forms u = log(R_i/r) against the
// angle rows, and evaluates dcov_fast on that subset.
DCovValue conditional_dcov(const geometry::PolarSample& polar, double radius_threshold);

}  // namespace dcov
}  // namespace tailgate
