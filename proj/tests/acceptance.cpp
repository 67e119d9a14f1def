// Acceptance suite. Each criterion prints one [PASS]/[FAIL] line; the exit
// code is the number of failing criteria. Run with a list of criterion
// numbers, or no arguments for all ten.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "tailgate/angular.hpp"
#include "tailgate/changepoint.hpp"
#include "tailgate/csv.hpp"
#include "tailgate/datagen.hpp"
#include "tailgate/dcov.hpp"
#include "tailgate/geometry.hpp"
#include "tailgate/json_io.hpp"
#include "tailgate/kernels.hpp"
#include "tailgate/pipeline.hpp"
#include "tailgate/pvalpath.hpp"
#include "tailgate/rng.hpp"
#include "tailgate/stats.hpp"

using namespace tailgate;
namespace fs = std::filesystem;

namespace {

double now_s() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

// Asymptotic Kolmogorov critical value at level 0.01.
double ks_critical_01(std::size_t n) { return 1.6276 / std::sqrt(static_cast<double>(n)); }

geometry::PolarSample product_polar(std::size_t n, std::uint64_t seed) {
    RngStream rng = derive_stream(seed, {9001});
    Sample s = make_sample(n, 2);
    for (std::size_t i = 0; i < n; ++i) {
        double r = 1.0 / rng.uniform_pos();
        double theta = rng.uniform();
        s(i, 0) = r * theta;
        s(i, 1) = r * (1.0 - theta);
    }
    return geometry::to_polar(s, geometry::NormSpec(1.0));
}

pipeline::RunConfig base_config() {
    pipeline::RunConfig c;
    c.norm_p = 1.0;
    c.n0 = 500;
    c.m = 60;
    c.L = 200;
    c.wbs_intervals = 5000;
    c.threads = 1;
    c.kde = false;
    return c;
}

std::optional<double> run_selection(pipeline::RunConfig c, datagen::Model model, std::size_t n,
                                    double gamma, std::uint64_t seed) {
    datagen::GeneratorSpec g;
    g.kind = model;
    g.n = n;
    g.gamma = gamma;
    g.seed = seed;
    c.generator = g;
    c.seed = seed;
    auto result = pipeline::run_pipeline(c);
    return result.selection.selected_level;
}

// ---------------------------------------------------------------------------

bool criterion1(std::string& detail) {
    double t0 = now_s();
    double worst = 0.0;
    for (std::uint64_t trial = 0; trial < 500; ++trial) {
        RngStream rng = derive_stream(1000 + trial, {1});
        std::size_t n = 2 + rng.uniform_int(49);
        std::size_t d = std::vector<std::size_t>{1, 2, 5}[trial % 3];
        std::vector<double> u(n), v(n * d);
        for (double& x : u) x = rng.uniform_range(-4.0, 4.0);
        for (double& x : v) x = rng.uniform_range(-4.0, 4.0);
        auto in = dcov::make_input(u, v, d);
        double a = dcov::dcov_naive(in).t_n;
        double b = dcov::dcov_fast(in).t_n;
        worst = std::max(worst, std::fabs(a - b) / std::max(1.0, std::fabs(a)));
    }
    double elapsed = now_s() - t0;
    std::ostringstream os;
    os << "max rel diff " << worst << " over 500 instances in " << elapsed << " s (kernel "
       << kernels::active_kernel() << ")";
    detail = os.str();
    return worst <= 1e-10 && elapsed < 10.0;
}

bool criterion2(std::string& detail) {
    double t0 = now_s();
    // 1000 raw p-values under the product null, L = 99. The pool is kept
    // much larger than the subsample: the empirical joint law of a finite
    // pool differs from the product of its marginals by O(1/N), which
    // would otherwise bias every p-value low.
    auto polar = product_polar(10000, 2026);
    double r = pvalpath::empirical_upper_quantile(polar.radii, 0.5);
    auto exc = pvalpath::exceedances(polar, r);
    std::vector<double> pvs(1000);
    for (int j = 0; j < 1000; ++j)
        pvs[j] = pvalpath::subsample_pvalue(exc, 50, 99, true, 2026, 0,
                                            static_cast<std::uint64_t>(j));
    std::sort(pvs.begin(), pvs.end());
    double ks = stats::ks_distance(pvs, [](double x) { return x; });
    bool ks_ok = ks < ks_critical_01(1000);

    // Mean p-value per level with m = 60.
    pvalpath::PathConfig pc;
    pc.levels = {0.1, 0.2, 0.3, 0.4};
    pc.n0 = 150;
    pc.m = 60;
    pc.L = 99;
    pc.seed = 2026;
    auto path = pvalpath::compute_path(product_polar(6000, 77), pc);
    double worst_mean = 0.0;
    for (std::size_t k = 0; k < pc.levels.size(); ++k)
        worst_mean = std::max(worst_mean, std::fabs(path.mean_pvalues[k] - 0.5));
    double elapsed = now_s() - t0;

    std::ostringstream os;
    os << "KS " << ks << " (crit " << ks_critical_01(1000) << "), worst |mean-0.5| "
       << worst_mean << ", " << elapsed << " s";
    detail = os.str();
    return ks_ok && worst_mean < 0.05 && elapsed < 120.0;
}

bool criterion3(std::string& detail) {
    auto paper = base_config();
    paper.q_min = 0.01;
    paper.q_max = 0.4;
    paper.grid_k = 150;
    int hits_paper = 0;
    double plateau = 0.0, beyond = 1.0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        datagen::GeneratorSpec g;
        g.kind = datagen::Model::MixtureThreshold;
        g.n = 10000;
        g.seed = seed;
        auto cfg = paper;
        cfg.generator = g;
        cfg.seed = seed;
        auto result = pipeline::run_pipeline(cfg);
        auto sel = result.selection.selected_level;
        if (sel && *sel >= 0.15 && *sel <= 0.28) ++hits_paper;
        if (seed == 1) {
            // path shape: near 0.5 where radius and angle are independent
            // (q < 0.2), well below once the Beta regime mixes in
            double lo_sum = 0.0, hi_sum = 0.0;
            std::size_t lo_n = 0, hi_n = 0;
            for (std::size_t k = 0; k < result.path.levels.size(); ++k) {
                if (!result.path.usable[k]) continue;
                if (result.path.levels[k] < 0.18) {
                    lo_sum += result.path.mean_pvalues[k];
                    ++lo_n;
                } else if (result.path.levels[k] > 0.27) {
                    hi_sum += result.path.mean_pvalues[k];
                    ++hi_n;
                }
            }
            plateau = lo_sum / static_cast<double>(lo_n);
            beyond = hi_sum / static_cast<double>(hi_n);
        }
    }
    bool shape_ok = std::fabs(plateau - 0.5) < 0.1 && beyond < 0.35;

    auto desk = paper;
    desk.grid_k = 30;
    desk.m = 20;
    desk.L = 99;
    // With m = 20 the path noise no longer hides the joint-resampling bias
    // of order n0/n, so the desk variant uses a smaller subsample overlap.
    desk.n0 = 300;
    double t0 = now_s();
    int hits_desk = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto sel = run_selection(desk, datagen::Model::MixtureThreshold, 10000, 0.8, seed);
        if (sel && *sel >= 0.12 && *sel <= 0.32) ++hits_desk;
    }
    double desk_s = now_s() - t0;

    std::ostringstream os;
    os << "paper-scale hits " << hits_paper << "/10 in [0.15,0.28]; path plateau " << plateau
       << ", beyond-boundary mean " << beyond << "; desk hits " << hits_desk
       << "/10 in [0.12,0.32] in " << desk_s << " s";
    detail = os.str();
    return hits_paper >= 8 && shape_ok && hits_desk >= 8 && desk_s < 300.0;
}

bool criterion4(std::string& detail) {
    auto c = base_config();
    c.q_min = 0.01;
    c.q_max = 0.3;
    c.grid_k = 150;
    angular::LogisticAngularLimit limit(0.8);
    int select_hits = 0, joint_hits = 0;
    std::vector<double> picks, ks_values;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        datagen::GeneratorSpec g;
        g.kind = datagen::Model::BivariateLogistic;
        g.n = 10000;
        g.gamma = 0.8;
        g.seed = seed;
        auto cfg = c;
        cfg.generator = g;
        cfg.seed = seed;
        auto result = pipeline::run_pipeline(cfg);
        if (!result.selection.selected_level) continue;
        double q = *result.selection.selected_level;
        picks.push_back(q);
        if (q < 0.03 || q > 0.15) continue;
        ++select_hits;
        double ks = stats::ks_distance(result.angular_estimate->sorted_angles,
                                       [&](double x) { return limit.cdf(x); });
        ks_values.push_back(ks);
        if (ks < 0.1) ++joint_hits;
    }
    std::ostringstream os;
    os << "selection hits " << select_hits << "/10, selection+KS<0.1 hits " << joint_hits
       << "/10; selections:";
    for (double q : picks) os << " " << q;
    os << "; KS:";
    for (double ks : ks_values) os << " " << ks;
    detail = os.str();
    return joint_hits >= 7;
}

bool criterion5(std::string& detail) {
    auto c = base_config();
    c.q_min = 0.01;
    c.q_max = 0.2;
    c.grid_k = 150;
    int none_count = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto sel = run_selection(c, datagen::Model::ParetoAlternating, 20000, 0.8, seed);
        if (!sel) ++none_count;
    }
    detail = "no-threshold outcomes " + std::to_string(none_count) + "/10";
    return none_count >= 8;
}

bool criterion6(std::string& detail) {
    auto c = base_config();
    // The grid starts where the subsample is powered (n_k = 20 at the first
    // level): under the L_0.2 quasi-norm the no-threshold outcome rests on
    // detecting dependence at the deepest levels, and n_k near the usability
    // floor of 10 cannot do that reliably.
    c.q_min = 0.04;
    c.q_max = 0.3;
    c.grid_k = 150;
    int hit_p02 = 0, hit_p1 = 0, hit_p5 = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        datagen::GeneratorSpec g;
        g.kind = datagen::Model::BivariateLogistic;
        g.n = 10000;
        g.gamma = 0.95;
        g.seed = seed;
        auto cfg = c;
        cfg.generator = g;
        cfg.seed = seed;
        auto entries = pipeline::norm_sensitivity(cfg, {0.2, 1.0, 5.0});
        const auto& s02 = entries[0].selection.selected_level;
        const auto& s1 = entries[1].selection.selected_level;
        const auto& s5 = entries[2].selection.selected_level;
        if (!s02) ++hit_p02;
        if (s1 && *s1 >= 0.02 && *s1 <= 0.10) ++hit_p1;
        if (s5 && *s5 >= 0.06 && *s5 <= 0.20) ++hit_p5;
    }
    std::ostringstream os;
    os << "p=0.2 none " << hit_p02 << "/10, p=1 in-range " << hit_p1 << "/10, p=5 in-range "
       << hit_p5 << "/10";
    detail = os.str();
    return hit_p02 >= 7 && hit_p1 >= 7 && hit_p5 >= 7;
}

bool criterion7(std::string& detail) {
    std::vector<double> step = {0, 0, 0, 1, 1, 1};
    double stat = 0.0;
    bool argmax_ok = changepoint::cusum_argmax(step, &stat) == 2;  // left block of 3

    int hits = 0;
    for (std::uint64_t trial = 0; trial < 100; ++trial) {
        RngStream rng = derive_stream(trial, {404});
        std::vector<double> x(150);
        for (int i = 0; i < 150; ++i) x[i] = (i < 75 ? 0.5 : 0.2) + 0.03 * rng.normal();
        changepoint::WbsParams params;
        params.intervals = 5000;
        params.seed = trial;
        auto fit = changepoint::wbs_fit_sequence(x, params);
        for (std::size_t b : fit.breakpoints)
            if (std::llabs(static_cast<long long>(b) - 74) <= 3) {
                ++hits;
                break;
            }
    }
    detail = "localization " + std::to_string(hits) + "/100, cusum argmax " +
             (argmax_ok ? "exact" : "WRONG");
    return hits >= 95 && argmax_ok;
}

bool criterion8(std::string& detail) {
    auto median_scaled = [](bool dependent, std::size_t n) {
        const double r_cut = datagen::mixture_true_radius();
        std::vector<double> vals;
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
            RngStream rng = derive_stream(seed, {808, n, dependent ? 1u : 0u});
            std::vector<double> u(n), v(n);
            for (std::size_t i = 0; i < n; ++i) {
                double r = std::fabs(datagen::t2_quantile(rng.uniform_pos()));
                u[i] = std::log(std::max(r, 1e-12));
                if (dependent) {
                    // mixture coupling: angle law switches with the radius
                    if (r > r_cut) {
                        v[i] = rng.uniform();
                    } else {
                        double a = rng.uniform(), b = rng.uniform(), c = rng.uniform(),
                               d2 = rng.uniform(), e = rng.uniform();
                        std::vector<double> five = {a, b, c, d2, e};
                        std::nth_element(five.begin(), five.begin() + 2, five.end());
                        v[i] = five[2];
                    }
                } else {
                    v[i] = rng.uniform();
                }
            }
            vals.push_back(static_cast<double>(n) *
                           dcov::dcov_fast(dcov::make_input(u, v, 1)).t_n);
        }
        return stats::median(vals);
    };
    double dep_ratio = median_scaled(true, 1600) / median_scaled(true, 400);
    double ind_ratio = median_scaled(false, 1600) / median_scaled(false, 400);
    std::ostringstream os;
    os << "dependent ratio " << dep_ratio << " (need >= 2), independent ratio " << ind_ratio
       << " (need < 1.5)";
    detail = os.str();
    return dep_ratio >= 2.0 && ind_ratio < 1.5;
}

bool criterion9(std::string& detail) {
    // Stand-in for external data: a dependent series written to CSV, read
    // back, rank-transformed, and pushed through the whole pipeline.
    fs::path dir = fs::temp_directory_path() / "tailgate_acceptance_c9";
    fs::create_directories(dir);
    auto csv = (dir / "user.csv").string();
    write_csv(csv, datagen::gen_ar_pareto(3287, 0.3, 7));

    auto sample = read_csv(csv, true);
    auto z = geometry::rank_transform(sample);
    double worst_ks = 0.0;
    for (std::size_t col = 0; col < z.d; ++col) {
        std::vector<double> x(z.n);
        for (std::size_t i = 0; i < z.n; ++i) x[i] = z(i, col);
        std::sort(x.begin(), x.end());
        worst_ks = std::max(
            worst_ks, stats::ks_distance(x, [](double v) { return std::exp(-1.0 / v); }));
    }
    bool frechet_ok = worst_ks < ks_critical_01(z.n);

    auto c = base_config();
    c.input_csv = csv;
    c.rank = true;
    c.q_min = 0.01;
    c.q_max = 0.3;
    c.grid_k = 30;
    c.n0 = 300;
    c.m = 20;
    c.L = 99;
    c.seed = 11;
    auto result = pipeline::run_pipeline(c);
    bool explicit_outcome =
        result.selection.selected_level.has_value() || !result.selection.reason.empty();

    fs::remove_all(dir);
    std::ostringstream os;
    os << "Frechet KS " << worst_ks << " (crit " << ks_critical_01(z.n) << "), outcome "
       << (result.selection.selected_level
               ? "selected " + format_double(*result.selection.selected_level)
               : "none (" + result.selection.reason + ")");
    detail = os.str();
    return frechet_ok && explicit_outcome;
}

bool criterion10(std::string& detail) {
    auto c = base_config();
    c.q_min = 0.01;
    c.q_max = 0.4;
    c.grid_k = 30;
    c.m = 20;
    c.L = 99;
    datagen::GeneratorSpec g;
    g.kind = datagen::Model::MixtureThreshold;
    g.n = 10000;
    g.seed = 5;
    c.generator = g;
    c.seed = 5;

    auto slurp = [](const fs::path& p) {
        std::ifstream in(p);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };

    fs::path base = fs::temp_directory_path() / "tailgate_acceptance_c10";
    fs::remove_all(base);
    std::vector<std::string> path_bytes, sel_bytes;
    for (unsigned threads : {1u, 4u, 8u}) {
        auto cfg = c;
        cfg.threads = threads;
        cfg.out_dir = (base / ("t" + std::to_string(threads))).string();
        auto result = pipeline::run_pipeline(cfg);
        pipeline::write_outputs(cfg, result);
        path_bytes.push_back(slurp(fs::path(cfg.out_dir) / "path.json"));
        sel_bytes.push_back(slurp(fs::path(cfg.out_dir) / "selection.json"));
    }
    fs::remove_all(base);
    bool ok = path_bytes[0] == path_bytes[1] && path_bytes[1] == path_bytes[2] &&
              sel_bytes[0] == sel_bytes[1] && sel_bytes[1] == sel_bytes[2] &&
              !path_bytes[0].empty();
    detail = ok ? "path.json and selection.json byte-identical across 1/4/8 threads"
                : "outputs differ across thread counts";
    return ok;
}

struct Criterion {
    int id;
    const char* name;
    std::function<bool(std::string&)> fn;
};

}  // namespace

int main(int argc, char** argv) {
    std::vector<Criterion> criteria = {
        {1, "oracle equivalence dcov_fast vs dcov_naive", criterion1},
        {2, "null calibration of subsampled p-values", criterion2},
        {3, "mixture-threshold reproduction (paper and desk scale)", criterion3},
        {4, "bivariate logistic reproduction and angular limit", criterion4},
        {5, "non-regularly-varying negative control", criterion5},
        {6, "norm sensitivity sweep (p = 0.2, 1, 5)", criterion6},
        {7, "WBS localization and CUSUM argmax", criterion7},
        {8, "scaled statistic: divergence vs boundedness", criterion8},
        {9, "user-CSV pipeline with rank transform", criterion9},
        {10, "byte-identical outputs across thread counts", criterion10},
    };

    std::vector<int> wanted;
    for (int i = 1; i < argc; ++i) {
        if (std::string(argv[i]) == "all") continue;
        wanted.push_back(std::atoi(argv[i]));
    }

    int failures = 0;
    for (const auto& c : criteria) {
        if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), c.id) == wanted.end())
            continue;
        std::string detail;
        bool ok = false;
        try {
            ok = c.fn(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << c.id << ": " << c.name
                  << " -- " << detail << std::endl;
        if (!ok) ++failures;
    }
    return failures;
}
