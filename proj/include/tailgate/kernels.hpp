#pragma once

#include <cstddef>
#include <string>

namespace tailgate {
namespace kernels {

// Pairwise-distance accumulation shared by both distance-covariance forms.
//
// Inputs: u[n] scalar series; v column-major n x d (column k starts at
// v + k*n). With a_ij = |u_i - u_j| and b_ij = ||v_i - v_j||_2, fills
//   a_row[i] = sum_j a_ij,   b_row[i] = sum_j b_ij
// over ordered pairs (zero diagonal) and returns sum_{i,j} a_ij * b_ij.
// Per-row partial sums are accumulated locally before being folded into the
// totals, keeping rounding at the level of single-row sums.
using PairSumsFn = double (*)(const double* u, const double* v, std::size_t n,
                              std::size_t d, double* a_row, double* b_row);

// Portable reference implementation.
double pair_sums_scalar(const double* u, const double* v, std::size_t n,
                        std::size_t d, double* a_row, double* b_row);

#if defined(TAILGATE_HAVE_AVX2_TU)
// AVX2/FMA variant, 4 pairs per step; bit-for-bit deterministic for a fixed
// input but not bit-identical to the scalar path (different sum order).
double pair_sums_avx2(const double* u, const double* v, std::size_t n,
                      std::size_t d, double* a_row, double* b_row);
#endif

// Runtime-dispatched entry point. Picks AVX2 when the CPU supports it,
// scalar otherwise; TAILGATE_KERNEL=scalar|avx2 overrides.
double pair_sums(const double* u, const double* v, std::size_t n, std::size_t d,
                 double* a_row, double* b_row);

// Name of the variant pair_sums dispatches to ("avx2" or "scalar").
const std::string& active_kernel();

}  // namespace kernels
}  // namespace tailgate
