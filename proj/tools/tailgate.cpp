// tailgate: radial threshold selection for multivariate heavy-tailed data.
//
// Subcommands: simulate, transform, dcov, path, select, angular, run, sweep.
// Machine outputs are JSON; raw samples are CSV. Exit codes: 0 success,
// 3 pipeline finished but no threshold selected, 1 hard error.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "tailgate/csv.hpp"
#include "tailgate/dcov.hpp"
#include "tailgate/error.hpp"
#include "tailgate/json_io.hpp"
#include "tailgate/kernels.hpp"
#include "tailgate/pipeline.hpp"
#include "tailgate/version.hpp"

namespace tg = tailgate;
using nlohmann::json;

namespace {

constexpr int kExitNoThreshold = 3;

unsigned default_threads() {
    if (const char* env = std::getenv("TAILGATE_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    return 1;
}

void parse_grid(const std::string& spec, double& q_min, double& q_max, std::size_t& k) {
    double a, b;
    long n;
    char c1, c2;
    std::istringstream ss(spec);
    if (!(ss >> a >> c1 >> b >> c2 >> n) || c1 != ':' || c2 != ':' || n < 2)
        throw tg::ParameterError("grid must be q_min:q_max:K, e.g. 0.01:0.4:150");
    q_min = a;
    q_max = b;
    k = static_cast<std::size_t>(n);
}

// Polar CSV layout shared by `transform` (writer) and `dcov` (reader):
// header r,theta_1..theta_d.
tg::geometry::PolarSample read_polar_csv(const std::string& path, double norm_p) {
    tg::Sample s = tg::read_csv(path);
    if (s.d < 3 || s.labels[0] != "r")
        throw tg::IoError("'" + path + "' is not a polar file (expect columns r,theta_1..)");
    tg::geometry::PolarSample polar;
    polar.norm = tg::geometry::NormSpec(norm_p);
    polar.n = s.n;
    polar.d = s.d - 1;
    polar.radii.resize(s.n);
    polar.angles.resize(s.n * polar.d);
    for (std::size_t i = 0; i < s.n; ++i) {
        polar.radii[i] = s(i, 0);
        for (std::size_t j = 0; j < polar.d; ++j) polar.angles[i * polar.d + j] = s(i, j + 1);
    }
    return polar;
}

struct RunFlags {
    tg::pipeline::RunConfig config;
    std::string model;
    std::size_t n = 10000;
    double gamma = 0.8;
    double phi = 0.5;
    std::string grid = "0.01:0.4:150";
    std::string rule = "liberal";
    bool no_kde = false;
    bool without_replacement = false;
};

void add_run_options(CLI::App* cmd, RunFlags& f) {
    cmd->add_option("--model", f.model,
                    "generator model (mixture-threshold, bivariate-logistic, "
                    "pareto-alternating, ar-pareto)");
    cmd->add_option("--in", f.config.input_csv, "input CSV (alternative to --model)");
    cmd->add_option("--n", f.n, "sample size for the generator");
    cmd->add_option("--gamma", f.gamma, "logistic dependence parameter in (0,1)");
    cmd->add_option("--phi", f.phi, "AR coefficient in (-1,1)");
    cmd->add_flag("--rank", f.config.rank, "rank-transform the margins first");
    cmd->add_option("--norm-p", f.config.norm_p, "L_p norm exponent (p>0; p<1 is a quasi-norm)");
    cmd->add_option("--grid", f.grid, "quantile levels as q_min:q_max:K");
    cmd->add_option("--n0", f.config.n0, "base subsample size");
    cmd->add_option("--m", f.config.m, "subsamples per level");
    cmd->add_option("--L", f.config.L, "null replicates per subsample");
    cmd->add_flag("--without-replacement", f.without_replacement,
                  "subsample without replacement");
    cmd->add_option("--wbs-intervals", f.config.wbs_intervals, "random WBS intervals");
    cmd->add_option("--wbs-zeta", f.config.wbs_zeta, "WBS threshold; negative = auto");
    cmd->add_option("--rule", f.rule, "selection rule: liberal or conservative");
    cmd->add_option("--cutoff", f.config.cutoff, "p-value cutoff for selection");
    cmd->add_option("--seed", f.config.seed, "master seed")->required();
    cmd->add_option("--threads", f.config.threads, "worker threads (or TAILGATE_THREADS)");
    cmd->add_flag("--no-kde", f.no_kde, "skip the angular density estimate");
}

tg::pipeline::RunConfig finalize_run_config(RunFlags& f) {
    parse_grid(f.grid, f.config.q_min, f.config.q_max, f.config.grid_k);
    f.config.rule = tg::changepoint::rule_from_name(f.rule);
    f.config.kde = !f.no_kde;
    f.config.with_replacement = !f.without_replacement;
    if (!f.model.empty()) {
        tg::datagen::GeneratorSpec g;
        g.kind = tg::datagen::model_from_name(f.model);
        g.n = f.n;
        g.gamma = f.gamma;
        g.phi = f.phi;
        g.seed = f.config.seed;
        f.config.generator = g;
    }
    return f.config;
}

int report_selection(const tg::changepoint::SelectionResult& sel) {
    if (sel.selected_level) {
        std::cout << "selected quantile level " << tg::format_double(*sel.selected_level)
                  << " (radius " << tg::format_double(*sel.selected_radius) << ")\n";
        return 0;
    }
    std::cout << "no threshold selected: " << sel.reason << "\n";
    return kExitNoThreshold;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"radial threshold selection for multivariate heavy-tailed data"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("tailgate ") + tg::kVersion);

    // -------- simulate --------
    auto* sim = app.add_subcommand("simulate", "write a simulated sample as CSV");
    struct {
        std::string model, out;
        std::size_t n = 10000;
        double gamma = 0.8, phi = 0.5;
        std::uint64_t seed = 0;
    } sim_f;
    sim->add_option("--model", sim_f.model, "generator model")->required();
    sim->add_option("--n", sim_f.n, "sample size");
    sim->add_option("--gamma", sim_f.gamma, "logistic parameter");
    sim->add_option("--phi", sim_f.phi, "AR coefficient");
    sim->add_option("--seed", sim_f.seed, "seed")->required();
    sim->add_option("--out", sim_f.out, "output CSV path")->required();
    sim->callback([&] {
        tg::datagen::GeneratorSpec g;
        g.kind = tg::datagen::model_from_name(sim_f.model);
        g.n = sim_f.n;
        g.gamma = sim_f.gamma;
        g.phi = sim_f.phi;
        g.seed = sim_f.seed;
        tg::write_csv(sim_f.out, tg::datagen::generate(g));
    });

    // -------- transform --------
    auto* tr = app.add_subcommand("transform", "polar-decompose a sample (optionally rank first)");
    struct {
        std::string in, out;
        double p = 1.0;
        bool rank = false;
    } tr_f;
    tr->add_option("--norm-p", tr_f.p, "L_p exponent");
    tr->add_flag("--rank", tr_f.rank, "rank-transform margins first");
    tr->add_option("--in", tr_f.in, "input CSV")->required();
    tr->add_option("--out", tr_f.out, "output CSV (r,theta_1..theta_d)")->required();
    tr->callback([&] {
        tg::Sample s = tg::read_csv(tr_f.in, tr_f.rank);
        if (tr_f.rank) s = tg::geometry::rank_transform(s);
        auto polar = tg::geometry::to_polar(s, tg::geometry::NormSpec(tr_f.p));
        tg::Sample out;
        out.n = polar.n;
        out.d = polar.d + 1;
        out.labels.push_back("r");
        for (std::size_t j = 0; j < polar.d; ++j)
            out.labels.push_back("theta_" + std::to_string(j + 1));
        out.data.resize(out.n * out.d);
        for (std::size_t i = 0; i < polar.n; ++i) {
            out(i, 0) = polar.radii[i];
            for (std::size_t j = 0; j < polar.d; ++j) out(i, j + 1) = polar.angle(i, j);
        }
        tg::write_csv(tr_f.out, out);
    });

    // -------- dcov --------
    auto* dc = app.add_subcommand("dcov", "conditional distance covariance at one threshold");
    struct {
        std::string in;
        double q = 0.1;
        double p = 1.0;
    } dc_f;
    dc->add_option("--in", dc_f.in, "polar CSV from `transform`")->required();
    dc->add_option("--threshold-quantile", dc_f.q, "upper-tail quantile level")->required();
    dc->add_option("--norm-p", dc_f.p, "norm exponent recorded with the file");
    dc->callback([&] {
        auto polar = read_polar_csv(dc_f.in, dc_f.p);
        double r = tg::pvalpath::empirical_upper_quantile(polar.radii, dc_f.q);
        auto value = tg::dcov::conditional_dcov(polar, r);
        json j;
        j["t_n"] = value.t_n;
        j["exceedances"] = value.n;
        j["n_phat_tn"] = static_cast<double>(value.n) * value.t_n;
        j["threshold"] = {{"quantile", dc_f.q}, {"radius", r}};
        j["kernel"] = tg::kernels::active_kernel();
        std::cout << j.dump(2) << '\n';
    });

    // -------- path --------
    auto* pa = app.add_subcommand("path", "mean p-value path over a level grid");
    RunFlags pa_f;
    std::string pa_out;
    add_run_options(pa, pa_f);
    pa->add_option("--out", pa_out, "output path.json")->required();
    pa->callback([&] {
        auto config = finalize_run_config(pa_f);
        if (config.threads == 1) config.threads = default_threads();
        tg::Sample sample = tg::pipeline::load_input(config);
        auto polar = tg::geometry::to_polar(sample, tg::geometry::NormSpec(config.norm_p));
        tg::pvalpath::PathConfig pc;
        pc.levels = tg::pvalpath::level_grid(config.q_min, config.q_max, config.grid_k);
        pc.n0 = config.n0;
        pc.m = config.m;
        pc.L = config.L;
        pc.seed = config.seed;
        pc.with_replacement = config.with_replacement;
        pc.threads = config.threads;
        auto path = tg::pvalpath::compute_path(polar, pc);
        tg::json_io::write_json_file(pa_out, tg::json_io::path_to_json(path));
    });

    // -------- select --------
    auto* se = app.add_subcommand("select", "fit WBS to a saved path and select the threshold");
    struct {
        std::string path, rule = "liberal", out, fit_out;
        double cutoff = 0.45;
        std::size_t intervals = 5000;
        double zeta = -1.0;
        std::uint64_t seed = 0;
    } se_f;
    se->add_option("--path", se_f.path, "path.json from `path`")->required();
    se->add_option("--rule", se_f.rule, "liberal or conservative");
    se->add_option("--cutoff", se_f.cutoff, "p-value cutoff");
    se->add_option("--wbs-intervals", se_f.intervals, "random WBS intervals");
    se->add_option("--wbs-zeta", se_f.zeta, "WBS threshold; negative = auto");
    se->add_option("--seed", se_f.seed, "seed for the WBS intervals")->required();
    se->add_option("--out", se_f.out, "write selection JSON here instead of stdout");
    se->add_option("--fit-out", se_f.fit_out, "also write the segmented fit");
    int se_exit = 0;
    se->callback([&] {
        auto path = tg::json_io::path_from_json(tg::json_io::read_json_file(se_f.path));
        tg::changepoint::WbsParams wp;
        wp.intervals = se_f.intervals;
        wp.zeta = se_f.zeta;
        wp.seed = se_f.seed;
        auto fit = tg::changepoint::wbs_fit(path, wp);
        auto sel = tg::changepoint::select_threshold(
            fit, path, tg::changepoint::rule_from_name(se_f.rule), se_f.cutoff);
        json j = tg::json_io::selection_to_json(sel);
        if (se_f.out.empty())
            std::cout << j.dump(2) << '\n';
        else
            tg::json_io::write_json_file(se_f.out, j);
        if (!se_f.fit_out.empty())
            tg::json_io::write_json_file(se_f.fit_out, tg::json_io::fit_to_json(fit));
        if (!sel.selected_level) se_exit = kExitNoThreshold;
    });

    // -------- angular --------
    auto* an = app.add_subcommand("angular", "angular estimate above a quantile threshold");
    struct {
        std::string in, out, bandwidth = "auto";
        double p = 1.0, q = 0.1;
        bool rank = false, kde = false;
    } an_f;
    an->add_option("--in", an_f.in, "input CSV")->required();
    an->add_option("--norm-p", an_f.p, "L_p exponent");
    an->add_flag("--rank", an_f.rank, "rank-transform margins first");
    an->add_option("--threshold-quantile", an_f.q, "upper-tail quantile level")->required();
    an->add_flag("--kde", an_f.kde, "include a boundary-reflected Gaussian KDE");
    an->add_option("--bandwidth", an_f.bandwidth, "KDE bandwidth, or 'auto' for Silverman");
    an->add_option("--out", an_f.out, "output angular.json")->required();
    an->callback([&] {
        tg::Sample s = tg::read_csv(an_f.in, an_f.rank);
        if (an_f.rank) s = tg::geometry::rank_transform(s);
        auto polar = tg::geometry::to_polar(s, tg::geometry::NormSpec(an_f.p));
        double r = tg::pvalpath::empirical_upper_quantile(polar.radii, an_f.q);
        double h = an_f.bandwidth == "auto" ? -1.0 : std::stod(an_f.bandwidth);
        auto est = an_f.kde ? tg::angular::angular_kde(polar, r, h)
                            : tg::angular::angular_ecdf(polar, r);
        est.threshold_level = an_f.q;
        tg::json_io::write_json_file(an_f.out, tg::json_io::angular_to_json(est));
    });

    // -------- run --------
    auto* ru = app.add_subcommand("run", "full pipeline: transform, path, fit, select, angular");
    RunFlags ru_f;
    std::string ru_manifest;
    ru->add_option("--from-manifest", ru_manifest, "rerun the config stored in a manifest");
    add_run_options(ru, ru_f);
    ru->get_option("--seed")->required(false);
    ru->add_option("--out-dir", ru_f.config.out_dir, "output directory")->required();
    int ru_exit = 0;
    ru->callback([&] {
        tg::pipeline::RunConfig config;
        if (!ru_manifest.empty()) {
            auto manifest = tg::json_io::read_json_file(ru_manifest);
            config = tg::pipeline::config_from_json(manifest.at("config"));
            config.out_dir = ru_f.config.out_dir;
        } else {
            if (ru->get_option("--seed")->count() == 0)
                throw tg::ParameterError("--seed is required (no wall-clock seeding)");
            config = finalize_run_config(ru_f);
        }
        if (config.threads == 1) config.threads = default_threads();
        auto result = tg::pipeline::run_pipeline(config);
        tg::pipeline::write_outputs(config, result);
        ru_exit = report_selection(result.selection);
    });

    // -------- sweep --------
    auto* sw = app.add_subcommand("sweep", "norm sensitivity: run the pipeline per L_p exponent");
    RunFlags sw_f;
    std::vector<double> sw_p;
    std::string sw_out;
    add_run_options(sw, sw_f);
    sw->add_option("--p-list", sw_p, "norm exponents to compare")->required()->delimiter(',');
    sw->add_option("--out", sw_out, "summary JSON path");
    sw->callback([&] {
        auto config = finalize_run_config(sw_f);
        if (config.threads == 1) config.threads = default_threads();
        auto entries = tg::pipeline::norm_sensitivity(config, sw_p);
        json rows = json::array();
        std::cout << "norm_p  selected_level\n";
        for (const auto& e : entries) {
            json row;
            row["norm_p"] = e.norm_p;
            row["selected"] = e.selection.selected_level.has_value();
            if (e.selection.selected_level) {
                row["level"] = *e.selection.selected_level;
                row["radius"] = *e.selection.selected_radius;
            } else {
                row["level"] = nullptr;
                row["radius"] = nullptr;
            }
            rows.push_back(row);
            std::cout << tg::format_double(e.norm_p) << "  "
                      << (e.selection.selected_level
                              ? tg::format_double(*e.selection.selected_level)
                              : std::string("none"))
                      << "\n";
        }
        if (!sw_out.empty()) {
            json j;
            j["schema"] = "tailgate.sweep/1";
            j["config"] = tg::pipeline::config_to_json(config);
            j["results"] = rows;
            tg::json_io::write_json_file(sw_out, j);
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return se_exit ? se_exit : ru_exit;
}
