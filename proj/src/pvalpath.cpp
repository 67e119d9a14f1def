#include "tailgate/pvalpath.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tailgate/dcov.hpp"
#include "tailgate/error.hpp"
#include "tailgate/parallel.hpp"

namespace tailgate {
namespace pvalpath {

namespace {

// Module tag for stream derivation; keeps path streams disjoint from other
// consumers of the same master seed.
constexpr std::uint64_t kTagPath = 0x70617468;  // "path"

std::vector<std::size_t> draw_indices(RngStream& rng, std::size_t pool, std::size_t take,
                                      bool with_replacement) {
    std::vector<std::size_t> out(take);
    if (with_replacement) {
        for (std::size_t t = 0; t < take; ++t)
            out[t] = static_cast<std::size_t>(rng.uniform_int(pool));
        return out;
    }
    // Partial Fisher-Yates; take <= pool is checked by the caller.
    std::vector<std::size_t> scratch(pool);
    std::iota(scratch.begin(), scratch.end(), std::size_t{0});
    for (std::size_t t = 0; t < take; ++t) {
        std::size_t r = t + static_cast<std::size_t>(rng.uniform_int(pool - t));
        std::swap(scratch[t], scratch[r]);
        out[t] = scratch[t];
    }
    return out;
}

double dcov_on_draw(const ExceedanceSet& exc, const std::vector<std::size_t>& u_idx,
                    const std::vector<std::size_t>& v_idx) {
    const std::size_t m = u_idx.size(), d = exc.d;
    std::vector<double> u(m), v(m * d);
    for (std::size_t a = 0; a < m; ++a) {
        u[a] = exc.u[u_idx[a]];
        for (std::size_t k = 0; k < d; ++k) v[k * m + a] = exc.v[k * exc.n + v_idx[a]];
    }
    return dcov::dcov_fast(dcov::make_input(std::move(u), std::move(v), d)).t_n;
}

}  // namespace

void PathConfig::validate() const {
    if (levels.empty()) throw ParameterError("level grid is empty");
    for (double q : levels)
        if (!(q > 0.0 && q < 1.0)) throw ParameterError("quantile levels must lie in (0,1)");
    if (!std::is_sorted(levels.begin(), levels.end()))
        throw ParameterError("quantile levels must be ascending");
    if (n0 < 1) throw ParameterError("n0 must be positive");
    if (m < 1) throw ParameterError("m must be positive");
    if (L < 19) throw ParameterError("L must be at least 19");
    if (threads < 1) throw ParameterError("threads must be positive");
}

std::vector<double> level_grid(double q_min, double q_max, std::size_t k) {
    if (!(q_min > 0.0 && q_min < q_max && q_max < 1.0))
        throw ParameterError("grid requires 0 < q_min < q_max < 1");
    if (k < 2) throw ParameterError("grid needs at least 2 levels");
    std::vector<double> out(k);
    for (std::size_t j = 0; j < k; ++j)
        out[j] = q_min + (q_max - q_min) * static_cast<double>(j) / static_cast<double>(k - 1);
    return out;
}

double empirical_upper_quantile(const std::vector<double>& radii, double q) {
    if (radii.empty()) throw DataError("empirical_upper_quantile: empty radii");
    if (!(q > 0.0 && q < 1.0)) throw ParameterError("quantile level must be in (0,1)");
    std::size_t n = radii.size();
    // ceil with a guard against n*q landing a hair above an integer.
    std::size_t m = static_cast<std::size_t>(std::ceil(static_cast<double>(n) * q - 1e-9));
    if (m < 1) m = 1;
    if (m > n) m = n;
    std::vector<double> tmp(radii);
    std::nth_element(tmp.begin(), tmp.begin() + (m - 1), tmp.end(), std::greater<double>());
    return tmp[m - 1];
}

std::size_t PValuePath::usable_count() const {
    std::size_t c = 0;
    for (bool b : usable) c += b;
    return c;
}

ExceedanceSet exceedances(const geometry::PolarSample& polar, double radius_threshold) {
    if (!(radius_threshold > 0.0)) throw ParameterError("radius threshold must be positive");
    const double log_r = std::log(radius_threshold);
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < polar.n; ++i)
        if (polar.radii[i] > radius_threshold) idx.push_back(i);
    ExceedanceSet out;
    out.n = idx.size();
    out.d = polar.d;
    out.u.resize(out.n);
    out.v.resize(out.n * out.d);
    for (std::size_t a = 0; a < out.n; ++a) {
        out.u[a] = std::log(polar.radii[idx[a]]) - log_r;
        for (std::size_t k = 0; k < out.d; ++k) out.v[k * out.n + a] = polar.angle(idx[a], k);
    }
    return out;
}

double subsample_pvalue(const ExceedanceSet& exc, std::size_t n_k, int L,
                        bool with_replacement, std::uint64_t seed,
                        std::uint64_t level_index, std::uint64_t subsample_index) {
    std::size_t need = std::max<std::size_t>(n_k, 10);
    if (exc.n < need) throw InsufficientExceedances(exc.n, need);

    // Replicate 0 is the observed statistic: n_k joint (radius, angle) draws.
    RngStream rng0 = derive_stream(seed, {kTagPath, level_index, subsample_index, 0});
    auto joint = draw_indices(rng0, exc.n, n_k, with_replacement);
    double t_obs = dcov_on_draw(exc, joint, joint);

    // Null replicates resample the two marginals independently, i.e. draws
    // from the product of the conditional empirical cdfs.
    int exceed = 0;
    for (int l = 1; l <= L; ++l) {
        RngStream rng = derive_stream(
            seed, {kTagPath, level_index, subsample_index, static_cast<std::uint64_t>(l)});
        auto u_idx = draw_indices(rng, exc.n, n_k, with_replacement);
        auto v_idx = draw_indices(rng, exc.n, n_k, with_replacement);
        if (dcov_on_draw(exc, u_idx, v_idx) >= t_obs) ++exceed;
    }
    return static_cast<double>(1 + exceed) / static_cast<double>(L + 1);
}

PValuePath compute_path(const geometry::PolarSample& polar, const PathConfig& config) {
    config.validate();
    const std::size_t K = config.levels.size();

    PValuePath path;
    path.n = polar.n;
    path.levels = config.levels;
    path.radii.resize(K);
    path.exceedance_counts.resize(K);
    path.subsample_sizes.resize(K);
    path.usable.assign(K, false);
    path.mean_pvalues.assign(K, 0.0);
    path.raw_pvalues.assign(K, {});

    std::vector<ExceedanceSet> sets(K);
    for (std::size_t k = 0; k < K; ++k) {
        double r = empirical_upper_quantile(polar.radii, config.levels[k]);
        path.radii[k] = r;
        sets[k] = exceedances(polar, r);
        path.exceedance_counts[k] = sets[k].n;
        // n_k = round(n0 * q_k); a level is usable only when that is at
        // least 10 and the exceedance pool can supply it.
        auto n_k = static_cast<std::size_t>(std::llround(config.n0 * config.levels[k]));
        path.subsample_sizes[k] = n_k;
        path.usable[k] = n_k >= 10 && sets[k].n >= n_k;
        if (path.usable[k]) path.raw_pvalues[k].assign(config.m, 0.0);
    }

    struct Task {
        std::size_t k;
        std::size_t j;
    };
    std::vector<Task> tasks;
    for (std::size_t k = 0; k < K; ++k)
        if (path.usable[k])
            for (int j = 0; j < config.m; ++j) tasks.push_back({k, static_cast<std::size_t>(j)});

    parallel_for(tasks.size(), config.threads, [&](std::size_t t) {
        const Task& task = tasks[t];
        path.raw_pvalues[task.k][task.j] =
            subsample_pvalue(sets[task.k], path.subsample_sizes[task.k], config.L,
                             config.with_replacement, config.seed, task.k, task.j);
    });

    for (std::size_t k = 0; k < K; ++k) {
        if (!path.usable[k]) continue;
        double sum = 0.0;
        for (double pv : path.raw_pvalues[k]) sum += pv;
        path.mean_pvalues[k] = sum / static_cast<double>(config.m);
        path.dcov_calls += static_cast<std::uint64_t>(config.m) * (config.L + 1);
    }
    return path;
}

}  // namespace pvalpath
}  // namespace tailgate
