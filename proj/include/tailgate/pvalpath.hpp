#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tailgate/geometry.hpp"
#include "tailgate/rng.hpp"

namespace tailgate {
namespace pvalpath {

struct PathConfig {
    std::vector<double> levels;  // ascending upper-tail quantile levels in (0,1)
    int n0 = 500;                // base subsample size; level k uses round(n0*q_k)
    int m = 60;                  // subsamples per level
    int L = 200;                 // null replicates per subsample
    std::uint64_t seed = 0;
    bool with_replacement = true;
    unsigned threads = 1;

    void validate() const;
};

// Evenly spaced levels, K points from q_min to q_max inclusive.
std::vector<double> level_grid(double q_min, double q_max, std::size_t k);

// The ceil(n*q)-th largest radius. Strict inequality R > r defines an
// exceedance everywhere downstream, so ties sitting at r are excluded.
double empirical_upper_quantile(const std::vector<double>& radii, double q);

struct PValuePath {
    std::vector<double> levels;
    std::vector<double> radii;                  // empirical upper quantile per level
    std::vector<std::size_t> exceedance_counts; // strict exceedances per level
    std::vector<std::size_t> subsample_sizes;   // n_k = round(n0*q_k) per level
    std::vector<bool> usable;                   // false when n_k < 10 or N_k < n_k
    std::vector<double> mean_pvalues;           // 0 where unusable
    std::vector<std::vector<double>> raw_pvalues;  // K x m, empty rows where unusable
    std::uint64_t dcov_calls = 0;               // deterministic work counter
    std::size_t n = 0;
    std::size_t usable_count() const;
};

// View of one level's exceedance set: u = log(R/r) and angle columns.
struct ExceedanceSet {
    std::vector<double> u;  // log(R_i / r), size N
    std::vector<double> v;  // column-major N x d angles
    std::size_t n = 0;
    std::size_t d = 0;
};

ExceedanceSet exceedances(const geometry::PolarSample& polar, double radius_threshold);

// One subsampled permutation p-value: T from n_k joint draws out of the
// exceedance set, then L null replicates with radii and angles resampled
// independently (the product of the conditional marginals); returns
// (1 + #{T~_l >= T}) / (L + 1). `rng` must be the stream for this (level,
// subsample) task; replicate l uses the derived substream {l}.
double subsample_pvalue(const ExceedanceSet& exc, std::size_t n_k, int L,
                        bool with_replacement, std::uint64_t seed,
                        std::uint64_t level_index, std::uint64_t subsample_index);

// The mean p-value path: for each level, m subsampled p-values averaged.
// Levels with too few exceedances are flagged, not dropped. Streams are
// derived per (level, subsample, replicate), so the result is identical
// for any thread count.
PValuePath compute_path(const geometry::PolarSample& polar, const PathConfig& config);

}  // namespace pvalpath
}  // namespace tailgate
