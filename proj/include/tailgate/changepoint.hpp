#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tailgate/pvalpath.hpp"

namespace tailgate {
namespace changepoint {

// Balanced two-sample mean contrast of x split after position b (0-based,
// left part = x[0..b]), i.e. the CUSUM statistic whose argmax estimates a
// change in mean. b ranges over [0, len-2].
double cusum_statistic(std::span<const double> x, std::size_t b);

// Split position maximizing the CUSUM on x; ties take the leftmost.
std::size_t cusum_argmax(std::span<const double> x, double* stat_out = nullptr);

struct WbsParams {
    std::size_t intervals = 5000;   // random subintervals (M)
    double zeta = -1.0;             // detection threshold; < 0 means auto
    std::uint64_t seed = 0;
    double zeta_used = 0.0;         // resolved threshold after the fit
};

struct SegmentedFit {
    // Positions are indices into the fitted sequence (the usable levels of
    // the path, in grid order). A breakpoint at position b ends a segment
    // at b; segment s covers [bounds[s], bounds[s+1]).
    std::vector<std::size_t> breakpoints;
    std::vector<double> segment_means;
    std::vector<std::size_t> level_indices;  // grid index of each fitted position
    std::vector<double> values;              // the sequence that was fitted
    WbsParams params;

    std::size_t size() const { return values.size(); }
    // Fitted (piecewise-constant) value at a position.
    double fitted(std::size_t pos) const;
    std::vector<double> fitted_values() const;
};

// Wild binary segmentation over a plain sequence: max CUSUM over M random
// subintervals (plus the current segment itself), recursing while the best
// contrast exceeds zeta. zeta < 0 resolves to 1.3 * sigma * sqrt(2 log K)
// with sigma = MAD(first differences)/sqrt(2).
SegmentedFit wbs_fit_sequence(std::span<const double> x, WbsParams params);

// Fit over the usable levels of a mean p-value path (needs at least 4).
SegmentedFit wbs_fit(const pvalpath::PValuePath& path, WbsParams params);

enum class SelectionRule { Liberal, Conservative };

SelectionRule rule_from_name(const std::string& name);
std::string rule_name(SelectionRule r);

struct SegmentRow {
    std::size_t first_level;  // grid index of the segment's first level
    std::size_t last_level;   // grid index of its last level
    double mean;
};

struct SelectionResult {
    std::optional<double> selected_level;   // grid quantile level, or none
    std::optional<double> selected_radius;  // matching radius
    SelectionRule rule = SelectionRule::Liberal;
    double cutoff = 0.45;
    std::string reason;
    // Diagnostics: the segment table plus, per fitted position, the grid
    // level and fitted value the rule was applied to.
    std::vector<SegmentRow> segments;
    std::vector<std::size_t> level_indices;
    std::vector<double> fitted;
    std::optional<std::size_t> decisive_position;
};

// Applies the cutoff rule to the fitted step function.
//  - liberal: the last level whose fitted value is >= cutoff; every later
//    level sits below the cutoff (dependence), so this is the smallest
//    quantile usable for estimation. Fit below cutoff everywhere -> none.
//  - conservative: the last level of the initial run with fit > cutoff.
// A fit that never drops below the cutoff selects the largest level.
SelectionResult select_threshold(const SegmentedFit& fit, const pvalpath::PValuePath& path,
                                 SelectionRule rule, double cutoff = 0.45);

}  // namespace changepoint
}  // namespace tailgate
