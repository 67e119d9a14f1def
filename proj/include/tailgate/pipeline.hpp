#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tailgate/angular.hpp"
#include "tailgate/changepoint.hpp"
#include "tailgate/datagen.hpp"
#include "tailgate/pvalpath.hpp"

namespace tailgate {
namespace pipeline {

struct RunConfig {
    // Input: a generator spec, or a CSV path when no generator is set.
    std::optional<datagen::GeneratorSpec> generator;
    std::string input_csv;
    bool rank = false;

    double norm_p = 1.0;
    double q_min = 0.01;
    double q_max = 0.4;
    std::size_t grid_k = 150;
    int n0 = 500;
    int m = 60;
    int L = 200;
    bool with_replacement = true;

    std::size_t wbs_intervals = 5000;
    double wbs_zeta = -1.0;  // auto
    changepoint::SelectionRule rule = changepoint::SelectionRule::Liberal;
    double cutoff = 0.45;

    std::uint64_t seed = 0;
    unsigned threads = 1;
    bool kde = true;
    std::string out_dir;

    void validate() const;
};

struct PipelineResult {
    pvalpath::PValuePath path;
    changepoint::SegmentedFit fit;
    changepoint::SelectionResult selection;
    std::optional<angular::AngularEstimate> angular_estimate;
    double wall_ms = 0.0;
};

// Loads or generates the sample named by the config (rank transform applied
// when requested).
Sample load_input(const RunConfig& config);

// transform -> path -> fit -> select -> angular. Pure apart from reading
// input_csv; writes nothing.
PipelineResult run_pipeline(const RunConfig& config);

// Writes path.json, fit.json, selection.json, angular.json (when a
// threshold was selected) and manifest.json into config.out_dir.
void write_outputs(const RunConfig& config, const PipelineResult& result);

nlohmann::json config_to_json(const RunConfig& config);
RunConfig config_from_json(const nlohmann::json& j);

struct SweepEntry {
    double norm_p;
    changepoint::SelectionResult selection;
};

// Runs the pipeline once per norm exponent, same seed and settings.
std::vector<SweepEntry> norm_sensitivity(const RunConfig& base, const std::vector<double>& p_list);

}  // namespace pipeline
}  // namespace tailgate
