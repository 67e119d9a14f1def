#include <algorithm>
#include <cmath>

#include "tailgate/kernels.hpp"

namespace tailgate {
namespace kernels {

double pair_sums_scalar(const double* u, const double* v, std::size_t n,
                        std::size_t d, double* a_row, double* b_row) {
    std::fill(a_row, a_row + n, 0.0);
    std::fill(b_row, b_row + n, 0.0);
    double s_ab = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double ui = u[i];
        double s_i = 0.0, ar_i = 0.0, br_i = 0.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            double da = std::fabs(ui - u[j]);
            double acc = 0.0;
            for (std::size_t k = 0; k < d; ++k) {
                double dk = v[k * n + i] - v[k * n + j];
                acc += dk * dk;
            }
            double db = std::sqrt(acc);
            s_i += da * db;
            ar_i += da;
            br_i += db;
            a_row[j] += da;
            b_row[j] += db;
        }
        s_ab += s_i;
        a_row[i] += ar_i;
        b_row[i] += br_i;
    }
    return 2.0 * s_ab;  // ordered pairs
}

}  // namespace kernels
}  // namespace tailgate
