#include "tailgate/pipeline.hpp"

#include <chrono>
#include <ctime>
#include <filesystem>

#include "tailgate/csv.hpp"
#include "tailgate/error.hpp"
#include "tailgate/json_io.hpp"
#include "tailgate/version.hpp"

namespace tailgate {
namespace pipeline {

using nlohmann::json;

void RunConfig::validate() const {
    if (!generator && input_csv.empty())
        throw ParameterError("no input: set a generator model or a CSV path");
    if (!(q_min > 0.0 && q_min < q_max && q_max < 1.0))
        throw ParameterError("grid requires 0 < q_min < q_max < 1");
    if (grid_k < 4) throw ParameterError("grid needs at least 4 levels");
    if (n0 < 1 || m < 1 || L < 19)
        throw ParameterError("counts must be positive and L at least 19");
    if (threads < 1) throw ParameterError("threads must be positive");
    geometry::NormSpec check(norm_p);
    (void)check;
}

Sample load_input(const RunConfig& config) {
    Sample sample;
    if (config.generator) {
        sample = datagen::generate(*config.generator);
    } else {
        sample = read_csv(config.input_csv, /*allow_negative=*/config.rank);
    }
    if (config.rank) sample = geometry::rank_transform(sample);
    return sample;
}

PipelineResult run_pipeline(const RunConfig& config) {
    config.validate();
    auto t0 = std::chrono::steady_clock::now();

    Sample sample = load_input(config);
    geometry::PolarSample polar = geometry::to_polar(sample, geometry::NormSpec(config.norm_p));

    pvalpath::PathConfig pc;
    pc.levels = pvalpath::level_grid(config.q_min, config.q_max, config.grid_k);
    pc.n0 = config.n0;
    pc.m = config.m;
    pc.L = config.L;
    pc.seed = config.seed;
    pc.with_replacement = config.with_replacement;
    pc.threads = config.threads;

    PipelineResult result;
    result.path = pvalpath::compute_path(polar, pc);

    changepoint::WbsParams wp;
    wp.intervals = config.wbs_intervals;
    wp.zeta = config.wbs_zeta;
    wp.seed = config.seed;
    result.fit = changepoint::wbs_fit(result.path, wp);
    result.selection =
        changepoint::select_threshold(result.fit, result.path, config.rule, config.cutoff);

    if (result.selection.selected_radius) {
        auto est = config.kde
                       ? angular::angular_kde(polar, *result.selection.selected_radius)
                       : angular::angular_ecdf(polar, *result.selection.selected_radius);
        est.threshold_level = result.selection.selected_level;
        result.angular_estimate = std::move(est);
    }

    auto t1 = std::chrono::steady_clock::now();
    result.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    return result;
}

json config_to_json(const RunConfig& c) {
    json j;
    if (c.generator) {
        j["generator"] = {{"model", datagen::model_name(c.generator->kind)},
                          {"n", c.generator->n},
                          {"seed", c.generator->seed},
                          {"gamma", c.generator->gamma},
                          {"phi", c.generator->phi}};
    } else {
        j["input_csv"] = c.input_csv;
    }
    j["rank"] = c.rank;
    j["norm_p"] = c.norm_p;
    j["grid"] = {{"q_min", c.q_min}, {"q_max", c.q_max}, {"k", c.grid_k}};
    j["n0"] = c.n0;
    j["m"] = c.m;
    j["L"] = c.L;
    j["with_replacement"] = c.with_replacement;
    j["wbs"] = {{"intervals", c.wbs_intervals}, {"zeta", c.wbs_zeta}};
    j["rule"] = changepoint::rule_name(c.rule);
    j["cutoff"] = c.cutoff;
    j["seed"] = c.seed;
    j["threads"] = c.threads;
    j["kde"] = c.kde;
    return j;
}

RunConfig config_from_json(const json& j) {
    RunConfig c;
    if (j.contains("generator")) {
        datagen::GeneratorSpec g;
        const auto& jg = j.at("generator");
        g.kind = datagen::model_from_name(jg.at("model").get<std::string>());
        g.n = jg.at("n").get<std::size_t>();
        g.seed = jg.at("seed").get<std::uint64_t>();
        g.gamma = jg.value("gamma", 0.8);
        g.phi = jg.value("phi", 0.5);
        c.generator = g;
    } else {
        c.input_csv = j.at("input_csv").get<std::string>();
    }
    c.rank = j.value("rank", false);
    c.norm_p = j.at("norm_p").get<double>();
    c.q_min = j.at("grid").at("q_min").get<double>();
    c.q_max = j.at("grid").at("q_max").get<double>();
    c.grid_k = j.at("grid").at("k").get<std::size_t>();
    c.n0 = j.at("n0").get<int>();
    c.m = j.at("m").get<int>();
    c.L = j.at("L").get<int>();
    c.with_replacement = j.value("with_replacement", true);
    c.wbs_intervals = j.at("wbs").at("intervals").get<std::size_t>();
    c.wbs_zeta = j.at("wbs").at("zeta").get<double>();
    c.rule = changepoint::rule_from_name(j.at("rule").get<std::string>());
    c.cutoff = j.at("cutoff").get<double>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.threads = j.value("threads", 1u);
    c.kde = j.value("kde", true);
    return c;
}

void write_outputs(const RunConfig& config, const PipelineResult& result) {
    namespace fs = std::filesystem;
    if (config.out_dir.empty()) throw ParameterError("output directory not set");
    fs::create_directories(config.out_dir);
    fs::path dir(config.out_dir);

    json_io::write_json_file((dir / "path.json").string(), json_io::path_to_json(result.path));
    json_io::write_json_file((dir / "fit.json").string(), json_io::fit_to_json(result.fit));
    json_io::write_json_file((dir / "selection.json").string(),
                             json_io::selection_to_json(result.selection));
    std::vector<std::string> outputs = {"path.json", "fit.json", "selection.json"};
    if (result.angular_estimate) {
        json_io::write_json_file((dir / "angular.json").string(),
                                 json_io::angular_to_json(*result.angular_estimate));
        outputs.push_back("angular.json");
    }

    // Wall time and timestamp live here, not in the analysis outputs, so
    // those stay byte-identical across reruns of one config+seed.
    json manifest;
    manifest["schema"] = "tailgate.manifest/1";
    manifest["version"] = kVersion;
    std::time_t now = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    manifest["created"] = buf;
    manifest["wall_ms"] = result.wall_ms;
    manifest["config"] = config_to_json(config);
    manifest["outputs"] = outputs;
    json_io::write_json_file((dir / "manifest.json").string(), manifest);
}

std::vector<SweepEntry> norm_sensitivity(const RunConfig& base, const std::vector<double>& p_list) {
    if (p_list.empty()) throw ParameterError("norm sweep needs at least one exponent");
    std::vector<SweepEntry> out;
    for (double p : p_list) {
        RunConfig c = base;
        c.norm_p = p;
        c.out_dir.clear();
        PipelineResult r = run_pipeline(c);
        out.push_back({p, std::move(r.selection)});
    }
    return out;
}

}  // namespace pipeline
}  // namespace tailgate
