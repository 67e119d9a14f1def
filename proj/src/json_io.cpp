#include "tailgate/json_io.hpp"

#include <fstream>

#include "tailgate/error.hpp"

namespace tailgate {
namespace json_io {

using nlohmann::json;

json path_to_json(const pvalpath::PValuePath& path) {
    json j;
    j["schema"] = "tailgate.path/1";
    j["n"] = path.n;
    j["levels"] = path.levels;
    j["radii"] = path.radii;
    j["exceedance_counts"] = path.exceedance_counts;
    j["subsample_sizes"] = path.subsample_sizes;
    j["usable"] = std::vector<int>(path.usable.begin(), path.usable.end());
    j["mean_pvalues"] = path.mean_pvalues;
    j["raw_pvalues"] = path.raw_pvalues;
    j["work"] = {{"dcov_calls", path.dcov_calls}};
    return j;
}

pvalpath::PValuePath path_from_json(const json& j) {
    if (j.value("schema", "") != "tailgate.path/1")
        throw IoError("not a tailgate path file (schema mismatch)");
    pvalpath::PValuePath path;
    path.n = j.at("n").get<std::size_t>();
    path.levels = j.at("levels").get<std::vector<double>>();
    path.radii = j.at("radii").get<std::vector<double>>();
    path.exceedance_counts = j.at("exceedance_counts").get<std::vector<std::size_t>>();
    path.subsample_sizes = j.at("subsample_sizes").get<std::vector<std::size_t>>();
    auto usable = j.at("usable").get<std::vector<int>>();
    path.usable.assign(usable.begin(), usable.end());
    path.mean_pvalues = j.at("mean_pvalues").get<std::vector<double>>();
    path.raw_pvalues = j.at("raw_pvalues").get<std::vector<std::vector<double>>>();
    path.dcov_calls = j.at("work").value("dcov_calls", std::uint64_t{0});
    return path;
}

json fit_to_json(const changepoint::SegmentedFit& fit) {
    json j;
    j["schema"] = "tailgate.fit/1";
    j["wbs"] = {{"intervals", fit.params.intervals},
                {"zeta", fit.params.zeta},
                {"zeta_used", fit.params.zeta_used},
                {"seed", fit.params.seed}};
    j["breakpoints"] = fit.breakpoints;
    j["segment_means"] = fit.segment_means;
    j["level_indices"] = fit.level_indices;
    j["values"] = fit.values;
    j["fitted"] = fit.fitted_values();
    return j;
}

json selection_to_json(const changepoint::SelectionResult& sel) {
    json j;
    j["schema"] = "tailgate.selection/1";
    j["rule"] = changepoint::rule_name(sel.rule);
    j["cutoff"] = sel.cutoff;
    j["selected"] = sel.selected_level.has_value();
    if (sel.selected_level) {
        j["level"] = *sel.selected_level;
        j["radius"] = *sel.selected_radius;
    } else {
        j["level"] = nullptr;
        j["radius"] = nullptr;
    }
    j["reason"] = sel.reason;
    j["segments"] = json::array();
    for (const auto& seg : sel.segments)
        j["segments"].push_back({{"first_level", seg.first_level},
                                 {"last_level", seg.last_level},
                                 {"mean", seg.mean}});
    j["trace"] = {{"level_indices", sel.level_indices},
                  {"fitted", sel.fitted}};
    if (sel.decisive_position) j["trace"]["decisive_position"] = *sel.decisive_position;
    return j;
}

json angular_to_json(const angular::AngularEstimate& est) {
    json j;
    j["schema"] = "tailgate.angular/1";
    j["n_used"] = est.n_used;
    j["d"] = est.d;
    j["threshold"] = {{"radius", est.threshold_radius}};
    if (est.threshold_level) j["threshold"]["level"] = *est.threshold_level;
    j["grid"] = est.grid;
    if (est.d == 2) {
        j["pseudo_angle"] = "x1^p/(x1^p+x2^p)";
        j["ecdf"] = est.ecdf;
    } else {
        j["marginal_ecdfs"] = est.marginal_ecdfs;
    }
    if (!est.density.empty()) {
        j["kde"] = {{"bandwidth", est.bandwidth}, {"values", est.density}};
    }
    return j;
}

void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << j.dump(2) << '\n';
    if (!out) throw IoError("failed while writing '" + path + "'");
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw IoError("cannot parse '" + path + "': " + e.what());
    }
    return j;
}

}  // namespace json_io
}  // namespace tailgate
