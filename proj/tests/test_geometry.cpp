#include <doctest.h>

#include <cmath>
#include <vector>

#include "tailgate/error.hpp"
#include "tailgate/geometry.hpp"
#include "tailgate/rng.hpp"

using namespace tailgate;
using geometry::NormSpec;

namespace {

Sample sample_from(std::vector<std::vector<double>> rows) {
    Sample s = make_sample(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) s(i, j) = rows[i][j];
    return s;
}

}  // namespace

TEST_CASE("to_polar hand values") {
    Sample s = sample_from({{3.0, 4.0}});

    auto p1 = geometry::to_polar(s, NormSpec(1.0));
    CHECK(p1.radii[0] == doctest::Approx(7.0));
    CHECK(p1.angle(0, 0) == doctest::Approx(3.0 / 7.0));
    CHECK(p1.angle(0, 1) == doctest::Approx(4.0 / 7.0));

    auto p2 = geometry::to_polar(s, NormSpec(2.0));
    CHECK(p2.radii[0] == doctest::Approx(5.0));
    CHECK(p2.angle(0, 0) == doctest::Approx(0.6));
    CHECK(p2.angle(0, 1) == doctest::Approx(0.8));
}

TEST_CASE("quasi-norm p=0.2 hand value") {
    // (1^0.2 + 1^0.2)^5 = 2^5 = 32, so theta = (1/32, 1/32).
    Sample s = sample_from({{1.0, 1.0}});
    auto p = geometry::to_polar(s, NormSpec(0.2));
    CHECK(p.radii[0] == doctest::Approx(32.0));
    CHECK(p.angle(0, 0) == doctest::Approx(1.0 / 32.0));
    CHECK(p.angle(0, 1) == doctest::Approx(1.0 / 32.0));
    double norm = geometry::lp_norm(std::span<const double>(p.angle_row(0), 2), NormSpec(0.2));
    CHECK(std::fabs(norm - 1.0) < 1e-12);
}

TEST_CASE("zero row is an error naming the row") {
    Sample s = sample_from({{1.0, 1.0}, {0.0, 0.0}});
    CHECK_THROWS_WITH_AS(geometry::to_polar(s, NormSpec(1.0)),
                         doctest::Contains("row at index 2"), DataError);
}

TEST_CASE("round trip and unit norm across p") {
    RngStream rng = derive_stream(101, {1});
    for (double p : {0.2, 1.0, 2.0, 5.0}) {
        Sample s = make_sample(50, 3);
        for (double& v : s.data) v = 0.01 + 10.0 * rng.uniform();
        auto polar = geometry::to_polar(s, NormSpec(p));
        for (std::size_t i = 0; i < s.n; ++i) {
            double norm = geometry::lp_norm(std::span<const double>(polar.angle_row(i), 3),
                                            NormSpec(p));
            CHECK(std::fabs(norm - 1.0) < 1e-12);
            for (std::size_t j = 0; j < s.d; ++j) {
                double rebuilt = polar.radii[i] * polar.angle(i, j);
                CHECK(std::fabs(rebuilt - s(i, j)) <= 1e-10 * std::fabs(s(i, j)));
            }
        }
    }
}

TEST_CASE("scale equivariance") {
    RngStream rng = derive_stream(102, {1});
    Sample s = make_sample(20, 2);
    for (double& v : s.data) v = 0.1 + rng.uniform();
    Sample scaled = s;
    for (double& v : scaled.data) v *= 37.5;
    for (double p : {0.2, 1.0, 2.0}) {
        auto a = geometry::to_polar(s, NormSpec(p));
        auto b = geometry::to_polar(scaled, NormSpec(p));
        for (std::size_t i = 0; i < s.n; ++i) {
            CHECK(b.radii[i] == doctest::Approx(37.5 * a.radii[i]));
            CHECK(b.angle(i, 0) == doctest::Approx(a.angle(i, 0)));
        }
    }
}

TEST_CASE("rank transform hand values at n=10") {
    Sample s = make_sample(10, 2);
    for (std::size_t i = 0; i < 10; ++i) {
        s(i, 0) = static_cast<double>(i + 1);  // already sorted: rank = i+1
        s(i, 1) = static_cast<double>(10 - i);
    }
    Sample z = geometry::rank_transform(s);
    CHECK(z(9, 0) == doctest::Approx(1.0 / std::log(10.0 / 9.5)));  // ~19.496
    CHECK(z(9, 0) == doctest::Approx(19.4957).epsilon(1e-4));
    CHECK(z(0, 0) == doctest::Approx(1.0 / std::log(20.0)));  // ~0.3338
    CHECK(z(0, 0) == doctest::Approx(0.33381).epsilon(1e-4));
}

TEST_CASE("rank transform is monotone and invariant to monotone maps") {
    RngStream rng = derive_stream(103, {1});
    Sample s = make_sample(64, 2);
    for (double& v : s.data) v = rng.uniform() * 100.0;
    Sample z = geometry::rank_transform(s);
    for (std::size_t i = 0; i < s.n; ++i)
        for (std::size_t k = 0; k < s.n; ++k)
            if (s(i, 0) > s(k, 0)) CHECK(z(i, 0) > z(k, 0));

    Sample warped = s;
    for (std::size_t i = 0; i < s.n; ++i) {
        warped(i, 0) = std::exp(s(i, 0) / 25.0);
        warped(i, 1) = std::log1p(s(i, 1));
    }
    Sample zw = geometry::rank_transform(warped);
    for (std::size_t i = 0; i < s.data.size(); ++i)
        CHECK(zw.data[i] == doctest::Approx(z.data[i]).epsilon(1e-14));
}

TEST_CASE("rank transform ties break by first occurrence") {
    Sample s = sample_from({{5.0, 1.0}, {5.0, 2.0}, {1.0, 3.0}});
    Sample z = geometry::rank_transform(s);
    // Ranks in column 0: row2 -> 1, row0 -> 2, row1 -> 3.
    CHECK(z(2, 0) < z(0, 0));
    CHECK(z(0, 0) < z(1, 0));
}

TEST_CASE("pseudo angle 2d") {
    Sample s = sample_from({{3.0, 4.0}, {7.5, 0.0}});
    auto polar = geometry::to_polar(s, NormSpec(1.0));
    auto w = geometry::pseudo_angle_2d(polar);
    CHECK(w[0] == doctest::Approx(3.0 / 7.0));
    CHECK(w[1] == doctest::Approx(1.0));
    for (std::size_t i = 0; i < s.n; ++i) CHECK(w[i] == polar.angle(i, 0));

    auto wp = geometry::pseudo_angle_power(polar);
    for (std::size_t i = 0; i < s.n; ++i) CHECK(wp[i] == doctest::Approx(w[i]));

    Sample s3 = sample_from({{1.0, 2.0, 3.0}});
    auto polar3 = geometry::to_polar(s3, NormSpec(1.0));
    CHECK_THROWS_AS(geometry::pseudo_angle_2d(polar3), DataError);
}

TEST_CASE("norm spec validation") {
    CHECK_THROWS_AS(NormSpec(0.0), ParameterError);
    CHECK_THROWS_AS(NormSpec(-1.0), ParameterError);
}
