#include "tailgate/dcov.hpp"

#include <cmath>

#include "tailgate/error.hpp"
#include "tailgate/kernels.hpp"

namespace tailgate {
namespace dcov {

namespace {

void validate(const DCovInput& input) {
    if (input.n < 2) throw DataError("distance covariance needs at least 2 points");
    if (input.u.size() != input.n || input.v.size() != input.n * input.d)
        throw DataError("distance covariance input has inconsistent sizes");
    for (double x : input.u)
        if (!std::isfinite(x)) throw DataError("non-finite value in scalar series");
    for (double x : input.v)
        if (!std::isfinite(x)) throw DataError("non-finite value in vector series");
}

DCovValue clamp(double t, std::size_t n) {
    DCovValue out;
    out.n = n;
    if (t < 0.0) {
        out.clamp_slack = -t;
        out.t_n = 0.0;
    } else {
        out.t_n = t;
    }
    return out;
}

}  // namespace

DCovInput make_input(std::vector<double> u, std::vector<double> v_colmajor, std::size_t d) {
    DCovInput in;
    in.n = u.size();
    in.d = d;
    in.u = std::move(u);
    in.v = std::move(v_colmajor);
    return in;
}

DCovValue dcov_naive(const DCovInput& input) {
    validate(input);
    const std::size_t n = input.n, d = input.d;
    if (n > 2000) throw ParameterError("dcov_naive is an oracle, capped at n = 2000");
    const double nd = static_cast<double>(n);

    std::vector<double> a(n * n), b(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            a[i * n + j] = std::fabs(input.u[i] - input.u[j]);
            double acc = 0.0;
            for (std::size_t k = 0; k < d; ++k) {
                double dk = input.v[k * n + i] - input.v[k * n + j];
                acc += dk * dk;
            }
            b[i * n + j] = std::sqrt(acc);
        }
    }

    double s1 = 0.0, sa = 0.0, sb = 0.0, s3 = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            s1 += a[i * n + j] * b[i * n + j];
            sa += a[i * n + j];
            sb += b[i * n + j];
        }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) s3 += a[i * n + j] * b[i * n + k];

    double t = s1 / (nd * nd) + sa * sb / (nd * nd * nd * nd) - 2.0 * s3 / (nd * nd * nd);
    return clamp(t, n);
}

DCovValue dcov_fast(const DCovInput& input) {
    validate(input);
    const std::size_t n = input.n;
    const double nd = static_cast<double>(n);

    std::vector<double> a_row(n), b_row(n);
    double s1 = kernels::pair_sums(input.u.data(), input.v.data(), n, input.d,
                                   a_row.data(), b_row.data());
    double sa = 0.0, sb = 0.0, s3 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sa += a_row[i];
        sb += b_row[i];
        s3 += a_row[i] * b_row[i];
    }
    double t = s1 / (nd * nd) + sa * sb / (nd * nd * nd * nd) - 2.0 * s3 / (nd * nd * nd);
    return clamp(t, n);
}

DCovValue conditional_dcov(const geometry::PolarSample& polar, double radius_threshold) {
    if (!(radius_threshold > 0.0))
        throw ParameterError("radius threshold must be positive");
    const double log_r = std::log(radius_threshold);
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < polar.n; ++i)
        if (polar.radii[i] > radius_threshold) idx.push_back(i);
    if (idx.size() < 2) throw InsufficientExceedances(idx.size(), 2);

    const std::size_t m = idx.size(), d = polar.d;
    std::vector<double> u(m), v(m * d);
    for (std::size_t a = 0; a < m; ++a) {
        u[a] = std::log(polar.radii[idx[a]]) - log_r;
        for (std::size_t k = 0; k < d; ++k) v[k * m + a] = polar.angle(idx[a], k);
    }
    return dcov_fast(make_input(std::move(u), std::move(v), d));
}

}  // namespace dcov
}  // namespace tailgate
