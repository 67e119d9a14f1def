// AVX2/FMA variant of the pairwise kernel. Built with -mavx2 -mfma in its
// own translation unit; callers reach it through the runtime dispatcher.

#include "tailgate/kernels.hpp"

#if defined(TAILGATE_HAVE_AVX2_TU)

#include <immintrin.h>

#include <algorithm>
#include <cmath>

namespace tailgate {
namespace kernels {

namespace {

inline double hsum(__m256d x) {
    __m128d lo = _mm256_castpd256_pd128(x);
    __m128d hi = _mm256_extractf128_pd(x, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

}  // namespace

double pair_sums_avx2(const double* u, const double* v, std::size_t n,
                      std::size_t d, double* a_row, double* b_row) {
    std::fill(a_row, a_row + n, 0.0);
    std::fill(b_row, b_row + n, 0.0);
    const __m256d abs_mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
    double s_ab = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const __m256d ui = _mm256_set1_pd(u[i]);
        __m256d s_vec = _mm256_setzero_pd();
        __m256d ar_vec = _mm256_setzero_pd();
        __m256d br_vec = _mm256_setzero_pd();
        double s_tail = 0.0, ar_tail = 0.0, br_tail = 0.0;
        std::size_t j = i + 1;
        for (; j + 4 <= n; j += 4) {
            __m256d da = _mm256_and_pd(abs_mask, _mm256_sub_pd(ui, _mm256_loadu_pd(u + j)));
            __m256d acc = _mm256_setzero_pd();
            for (std::size_t k = 0; k < d; ++k) {
                const double* col = v + k * n;
                __m256d dk = _mm256_sub_pd(_mm256_set1_pd(col[i]), _mm256_loadu_pd(col + j));
                acc = _mm256_fmadd_pd(dk, dk, acc);
            }
            __m256d db = _mm256_sqrt_pd(acc);
            s_vec = _mm256_fmadd_pd(da, db, s_vec);
            ar_vec = _mm256_add_pd(ar_vec, da);
            br_vec = _mm256_add_pd(br_vec, db);
            _mm256_storeu_pd(a_row + j, _mm256_add_pd(_mm256_loadu_pd(a_row + j), da));
            _mm256_storeu_pd(b_row + j, _mm256_add_pd(_mm256_loadu_pd(b_row + j), db));
        }
        for (; j < n; ++j) {
            double da = std::fabs(u[i] - u[j]);
            double acc = 0.0;
            for (std::size_t k = 0; k < d; ++k) {
                double dk = v[k * n + i] - v[k * n + j];
                acc += dk * dk;
            }
            double db = std::sqrt(acc);
            s_tail += da * db;
            ar_tail += da;
            br_tail += db;
            a_row[j] += da;
            b_row[j] += db;
        }
        s_ab += hsum(s_vec) + s_tail;
        a_row[i] += hsum(ar_vec) + ar_tail;
        b_row[i] += hsum(br_vec) + br_tail;
    }
    return 2.0 * s_ab;
}

}  // namespace kernels
}  // namespace tailgate

#endif  // TAILGATE_HAVE_AVX2_TU
