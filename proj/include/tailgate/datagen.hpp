#pragma once

#include <cstdint>
#include <string>

#include "tailgate/rng.hpp"
#include "tailgate/sample.hpp"

namespace tailgate {
namespace datagen {

enum class Model {
    MixtureThreshold,
    BivariateLogistic,
    ParetoAlternating,
    ArPareto,
};

Model model_from_name(const std::string& name);
std::string model_name(Model m);

struct GeneratorSpec {
    Model kind = Model::MixtureThreshold;
    std::size_t n = 0;
    std::uint64_t seed = 0;
    double gamma = 0.8;  // bivariate-logistic, in (0,1)
    double phi = 0.5;    // ar-pareto, in (-1,1)
};

// Quantile of the t distribution with 2 degrees of freedom (closed form).
double t2_quantile(double p);

// Upper 20% quantile of |t_2|, the mixture model's true independence radius.
double mixture_true_radius();

// R = |t_2|; the angle is U(0,1) above the upper-20% radius of R and
// Beta(3,3) below it; rows are (R*theta, R*(1-theta)). Radius and angle are
// independent given R > r exactly when r >= the true radius.
Sample gen_mixture_threshold(std::size_t n, std::uint64_t seed);

// Unit-Frechet margins with symmetric logistic dependence, cdf
// exp(-(x1^(-1/gamma) + x2^(-1/gamma))^gamma). Sampled through a positive
// alpha-stable mixing variable (Chambers-Mallows-Stuck) so the joint law is
// exact: X_j = (S/E_j)^gamma with S ~ PS(gamma), E_j iid Exp(1).
Sample gen_bivariate_logistic(std::size_t n, double gamma, std::uint64_t seed);

// R standard Pareto; angle uniform on (0,0.5) when floor(log R) is even and
// on (0.5,1) when odd. The conditional law of the angle oscillates with the
// threshold, so the vector is not regularly varying.
Sample gen_pareto_alternating(std::size_t n, std::uint64_t seed);

// Bivariate AR(1) with iid Pareto(alpha=2) innovations per coordinate,
// clamped at 0 from below; first 1000 steps are burn-in and discarded.
Sample gen_ar_pareto(std::size_t n, double phi, std::uint64_t seed);

Sample generate(const GeneratorSpec& spec);

// Positive alpha-stable draw with Laplace transform exp(-t^alpha), 0<alpha<1.
double positive_stable(double alpha, RngStream& rng);

}  // namespace datagen
}  // namespace tailgate
