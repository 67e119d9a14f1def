#include "tailgate/datagen.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "tailgate/error.hpp"
#include "tailgate/rng.hpp"

namespace tailgate {
namespace datagen {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Stream tags keep the per-model substreams of one master seed apart.
enum : std::uint64_t { kTagMixture = 1, kTagLogistic = 2, kTagPareto = 3, kTagAr = 4 };

// Median of five uniforms, i.e. the 3rd order statistic: Beta(3,3).
double beta33(RngStream& rng) {
    std::array<double, 5> u;
    for (double& x : u) x = rng.uniform();
    std::nth_element(u.begin(), u.begin() + 2, u.end());
    return u[2];
}

void check_n(std::size_t n) {
    if (n == 0) throw ParameterError("sample count n must be at least 1");
}

}  // namespace

Model model_from_name(const std::string& name) {
    if (name == "mixture-threshold") return Model::MixtureThreshold;
    if (name == "bivariate-logistic") return Model::BivariateLogistic;
    if (name == "pareto-alternating") return Model::ParetoAlternating;
    if (name == "ar-pareto") return Model::ArPareto;
    throw ParameterError("unknown model '" + name + "'");
}

std::string model_name(Model m) {
    switch (m) {
        case Model::MixtureThreshold: return "mixture-threshold";
        case Model::BivariateLogistic: return "bivariate-logistic";
        case Model::ParetoAlternating: return "pareto-alternating";
        case Model::ArPareto: return "ar-pareto";
    }
    return "?";
}

double t2_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw ParameterError("t2_quantile: p must be in (0,1)");
    // F(t) = 1/2 + t / (2 sqrt(2 + t^2)) inverts in closed form.
    double w = 2.0 * p - 1.0;
    return w * std::sqrt(2.0 / (1.0 - w * w));
}

double mixture_true_radius() {
    // P(|T| > r) = 0.2  <=>  F(r) = 0.9 for the symmetric t_2.
    return t2_quantile(0.9);
}

Sample gen_mixture_threshold(std::size_t n, std::uint64_t seed) {
    check_n(n);
    const double r_cut = mixture_true_radius();
    RngStream rng = derive_stream(seed, {kTagMixture});
    Sample s = make_sample(n, 2);
    for (std::size_t i = 0; i < n; ++i) {
        double r = std::fabs(t2_quantile(rng.uniform_pos()));
        double theta = r > r_cut ? rng.uniform() : beta33(rng);
        s(i, 0) = r * theta;
        s(i, 1) = r * (1.0 - theta);
    }
    return s;
}

double positive_stable(double alpha, RngStream& rng) {
    double u = kPi * rng.uniform_pos();
    double w = rng.exponential();
    return std::pow(std::sin((1.0 - alpha) * u) / w, (1.0 - alpha) / alpha) *
           std::sin(alpha * u) / std::pow(std::sin(u), 1.0 / alpha);
}

Sample gen_bivariate_logistic(std::size_t n, double gamma, std::uint64_t seed) {
    check_n(n);
    if (!(gamma > 0.0 && gamma < 1.0))
        throw ParameterError("bivariate-logistic: gamma must be in (0,1)");
    RngStream rng = derive_stream(seed, {kTagLogistic});
    Sample s = make_sample(n, 2);
    for (std::size_t i = 0; i < n; ++i) {
        double stab = positive_stable(gamma, rng);
        for (std::size_t j = 0; j < 2; ++j) {
            double e = rng.exponential();
            // (S/E)^gamma; E from uniform_pos is strictly positive.
            s(i, j) = std::pow(stab / std::max(e, 1e-300), gamma);
        }
    }
    return s;
}

Sample gen_pareto_alternating(std::size_t n, std::uint64_t seed) {
    check_n(n);
    RngStream rng = derive_stream(seed, {kTagPareto});
    Sample s = make_sample(n, 2);
    for (std::size_t i = 0; i < n; ++i) {
        double r = 1.0 / rng.uniform_pos();
        long band = static_cast<long>(std::floor(std::log(r)));
        double theta = band % 2 == 0 ? 0.5 * rng.uniform() : 0.5 + 0.5 * rng.uniform();
        s(i, 0) = r * theta;
        s(i, 1) = r * (1.0 - theta);
    }
    return s;
}

Sample gen_ar_pareto(std::size_t n, double phi, std::uint64_t seed) {
    check_n(n);
    if (!(phi > -1.0 && phi < 1.0)) throw ParameterError("ar-pareto: |phi| must be < 1");
    constexpr std::size_t kBurnIn = 1000;
    RngStream rng = derive_stream(seed, {kTagAr});
    Sample s = make_sample(n, 2);
    double state[2] = {0.0, 0.0};
    for (std::size_t t = 0; t < kBurnIn + n; ++t) {
        for (std::size_t j = 0; j < 2; ++j) {
            double z = 1.0 / std::sqrt(rng.uniform_pos());  // Pareto(alpha=2), z >= 1
            state[j] = std::max(0.0, phi * state[j] + z);
        }
        if (t >= kBurnIn) {
            s(t - kBurnIn, 0) = state[0];
            s(t - kBurnIn, 1) = state[1];
        }
    }
    return s;
}

Sample generate(const GeneratorSpec& spec) {
    switch (spec.kind) {
        case Model::MixtureThreshold: return gen_mixture_threshold(spec.n, spec.seed);
        case Model::BivariateLogistic: return gen_bivariate_logistic(spec.n, spec.gamma, spec.seed);
        case Model::ParetoAlternating: return gen_pareto_alternating(spec.n, spec.seed);
        case Model::ArPareto: return gen_ar_pareto(spec.n, spec.phi, spec.seed);
    }
    throw ParameterError("unknown generator kind");
}

}  // namespace datagen
}  // namespace tailgate
