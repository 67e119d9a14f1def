#include "tailgate/changepoint.hpp"

#include <algorithm>
#include <cmath>

#include "tailgate/error.hpp"
#include "tailgate/rng.hpp"

namespace tailgate {
namespace changepoint {

namespace {

constexpr std::uint64_t kTagWbs = 0x776273;  // "wbs"

double median_inplace(std::vector<double>& v) {
    if (v.empty()) return 0.0;
    std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + mid, v.end());
    double hi = v[mid];
    if (v.size() % 2 == 1) return hi;
    std::nth_element(v.begin(), v.begin() + mid - 1, v.begin() + mid);
    return 0.5 * (v[mid - 1] + hi);
}

// MAD of the first differences, scaled for Gaussian consistency, divided by
// sqrt(2) because differencing doubles the noise variance.
double noise_scale(std::span<const double> x) {
    if (x.size() < 2) return 0.0;
    std::vector<double> d(x.size() - 1);
    for (std::size_t i = 0; i + 1 < x.size(); ++i) d[i] = x[i + 1] - x[i];
    std::vector<double> tmp(d);
    double med = median_inplace(tmp);
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = std::fabs(d[i] - med);
    return 1.4826 * median_inplace(d) / std::sqrt(2.0);
}

struct Interval {
    std::size_t s;
    std::size_t e;  // inclusive
};

// Max CUSUM over splits of x[s..e] using global prefix sums. Returns the
// best statistic and split position (absolute, leftmost on ties).
void interval_max_cusum(const std::vector<double>& prefix, std::size_t s, std::size_t e,
                        double& best_stat, std::size_t& best_b) {
    const double n = static_cast<double>(e - s + 1);
    const double total = prefix[e + 1] - prefix[s];
    best_stat = -1.0;
    best_b = s;
    for (std::size_t b = s; b < e; ++b) {
        double left = static_cast<double>(b - s + 1);
        double right = n - left;
        double sum_left = prefix[b + 1] - prefix[s];
        double sum_right = total - sum_left;
        double stat = std::fabs(std::sqrt(right / (n * left)) * sum_left -
                                std::sqrt(left / (n * right)) * sum_right);
        if (stat > best_stat) {
            best_stat = stat;
            best_b = b;
        }
    }
}

void segment_recurse(const std::vector<double>& prefix, const std::vector<Interval>& intervals,
                     std::size_t s, std::size_t e, double zeta,
                     std::vector<std::size_t>& breaks) {
    if (e <= s) return;
    double best_stat = -1.0;
    std::size_t best_b = s;
    // The current segment itself always competes, so M = 0 degrades to
    // plain binary segmentation.
    interval_max_cusum(prefix, s, e, best_stat, best_b);
    for (const Interval& iv : intervals) {
        if (iv.s < s || iv.e > e || iv.e <= iv.s) continue;
        double stat;
        std::size_t b;
        interval_max_cusum(prefix, iv.s, iv.e, stat, b);
        if (stat > best_stat) {
            best_stat = stat;
            best_b = b;
        }
    }
    if (best_stat > zeta) {
        breaks.push_back(best_b);
        segment_recurse(prefix, intervals, s, best_b, zeta, breaks);
        segment_recurse(prefix, intervals, best_b + 1, e, zeta, breaks);
    }
}

}  // namespace

double cusum_statistic(std::span<const double> x, std::size_t b) {
    if (x.size() < 2) throw DataError("cusum_statistic needs at least 2 points");
    if (b + 2 > x.size()) throw ParameterError("cusum split out of range");
    const double n = static_cast<double>(x.size());
    double sum_left = 0.0, sum_right = 0.0;
    for (std::size_t i = 0; i <= b; ++i) sum_left += x[i];
    for (std::size_t i = b + 1; i < x.size(); ++i) sum_right += x[i];
    double left = static_cast<double>(b + 1);
    double right = n - left;
    return std::fabs(std::sqrt(right / (n * left)) * sum_left -
                     std::sqrt(left / (n * right)) * sum_right);
}

std::size_t cusum_argmax(std::span<const double> x, double* stat_out) {
    if (x.size() < 2) throw DataError("cusum_argmax needs at least 2 points");
    double best = -1.0;
    std::size_t best_b = 0;
    for (std::size_t b = 0; b + 1 < x.size(); ++b) {
        double s = cusum_statistic(x, b);
        if (s > best) {
            best = s;
            best_b = b;
        }
    }
    if (stat_out) *stat_out = best;
    return best_b;
}

double SegmentedFit::fitted(std::size_t pos) const {
    std::size_t seg = 0;
    while (seg < breakpoints.size() && pos > breakpoints[seg]) ++seg;
    return segment_means[seg];
}

std::vector<double> SegmentedFit::fitted_values() const {
    std::vector<double> out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) out[i] = fitted(i);
    return out;
}

SegmentedFit wbs_fit_sequence(std::span<const double> x, WbsParams params) {
    const std::size_t K = x.size();
    if (K < 4) throw DataError("path too short for segmentation (need at least 4 points)");
    if (params.intervals < 1) throw ParameterError("interval count must be at least 1");

    SegmentedFit fit;
    fit.values.assign(x.begin(), x.end());
    fit.level_indices.resize(K);
    for (std::size_t i = 0; i < K; ++i) fit.level_indices[i] = i;

    double zeta = params.zeta;
    if (zeta < 0.0)
        zeta = 1.3 * noise_scale(x) * std::sqrt(2.0 * std::log(static_cast<double>(K)));
    // A contrast on an exactly constant stretch computes to ~1e-16 rather
    // than 0, so the threshold needs a floor above rounding noise.
    double scale = 0.0;
    for (double v : x) scale = std::max(scale, std::fabs(v));
    zeta = std::max(zeta, 1e-9 * (1.0 + scale));
    params.zeta_used = zeta;
    fit.params = params;

    RngStream rng = derive_stream(params.seed, {kTagWbs});
    std::vector<Interval> intervals(params.intervals);
    for (Interval& iv : intervals) {
        std::size_t a, b;
        do {
            a = static_cast<std::size_t>(rng.uniform_int(K));
            b = static_cast<std::size_t>(rng.uniform_int(K));
        } while (a == b);
        iv = {std::min(a, b), std::max(a, b)};
    }

    std::vector<double> prefix(K + 1, 0.0);
    for (std::size_t i = 0; i < K; ++i) prefix[i + 1] = prefix[i] + x[i];

    segment_recurse(prefix, intervals, 0, K - 1, zeta, fit.breakpoints);
    std::sort(fit.breakpoints.begin(), fit.breakpoints.end());

    std::size_t start = 0;
    for (std::size_t s = 0; s <= fit.breakpoints.size(); ++s) {
        std::size_t end = s < fit.breakpoints.size() ? fit.breakpoints[s] + 1 : K;
        fit.segment_means.push_back((prefix[end] - prefix[start]) /
                                    static_cast<double>(end - start));
        start = end;
    }
    return fit;
}

SegmentedFit wbs_fit(const pvalpath::PValuePath& path, WbsParams params) {
    std::vector<double> values;
    std::vector<std::size_t> grid_index;
    for (std::size_t k = 0; k < path.levels.size(); ++k) {
        if (!path.usable[k]) continue;
        values.push_back(path.mean_pvalues[k]);
        grid_index.push_back(k);
    }
    SegmentedFit fit = wbs_fit_sequence(values, params);
    fit.level_indices = std::move(grid_index);
    return fit;
}

SelectionRule rule_from_name(const std::string& name) {
    if (name == "liberal") return SelectionRule::Liberal;
    if (name == "conservative") return SelectionRule::Conservative;
    throw ParameterError("unknown selection rule '" + name + "'");
}

std::string rule_name(SelectionRule r) {
    return r == SelectionRule::Liberal ? "liberal" : "conservative";
}

SelectionResult select_threshold(const SegmentedFit& fit, const pvalpath::PValuePath& path,
                                 SelectionRule rule, double cutoff) {
    if (fit.size() != fit.level_indices.size())
        throw DataError("segmented fit is inconsistent");
    for (std::size_t idx : fit.level_indices)
        if (idx >= path.levels.size() || !path.usable[idx])
            throw DataError("segmented fit does not match the path's usable levels");

    SelectionResult res;
    res.rule = rule;
    res.cutoff = cutoff;
    res.level_indices = fit.level_indices;
    res.fitted = fit.fitted_values();
    const std::size_t K = res.fitted.size();

    std::size_t seg_start = 0;
    for (std::size_t s = 0; s < fit.segment_means.size(); ++s) {
        std::size_t seg_end = s < fit.breakpoints.size() ? fit.breakpoints[s] : K - 1;
        res.segments.push_back({fit.level_indices[seg_start], fit.level_indices[seg_end],
                                fit.segment_means[s]});
        seg_start = seg_end + 1;
    }

    std::optional<std::size_t> pick;
    if (rule == SelectionRule::Liberal) {
        // Last position at or above the cutoff; everything after it is
        // consistent with dependence.
        for (std::size_t i = K; i-- > 0;) {
            if (res.fitted[i] >= cutoff) {
                pick = i;
                break;
            }
        }
        if (!pick) res.reason = "fitted path below cutoff at every level";
    } else {
        // End of the initial run above the cutoff.
        if (res.fitted[0] > cutoff) {
            std::size_t i = 0;
            while (i + 1 < K && res.fitted[i + 1] > cutoff) ++i;
            pick = i;
        } else {
            res.reason = "fitted path at or below cutoff from the first level";
        }
    }

    if (pick) {
        std::size_t grid = fit.level_indices[*pick];
        res.decisive_position = *pick;
        res.selected_level = path.levels[grid];
        res.selected_radius = path.radii[grid];
        res.reason = *pick + 1 == K ? "fit consistent with independence at every level"
                                    : "cutoff rule satisfied";
    }
    return res;
}

}  // namespace changepoint
}  // namespace tailgate
