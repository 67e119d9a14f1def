#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "tailgate/rng.hpp"
#include "tailgate/stats.hpp"

using namespace tailgate;

TEST_CASE("streams are deterministic and path-sensitive") {
    RngStream a = derive_stream(42, {1, 2, 3});
    RngStream b = derive_stream(42, {1, 2, 3});
    RngStream c = derive_stream(42, {3, 2, 1});
    RngStream d = derive_stream(43, {1, 2, 3});
    for (int i = 0; i < 16; ++i) {
        auto va = a.next_u64();
        CHECK(va == b.next_u64());
        CHECK(va != c.next_u64());
        CHECK(va != d.next_u64());
    }
}

TEST_CASE("uniform stays in range and looks uniform") {
    RngStream rng = derive_stream(7, {0});
    const int n = 20000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        double u = rng.uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
    }
    CHECK(std::fabs(sum / n - 0.5) < 0.01);
}

TEST_CASE("uniform_pos never returns 0 or 1") {
    RngStream rng = derive_stream(9, {1});
    for (int i = 0; i < 10000; ++i) {
        double u = rng.uniform_pos();
        REQUIRE(u > 0.0);
        REQUIRE(u < 1.0);
    }
}

TEST_CASE("uniform_int covers the range without bias") {
    RngStream rng = derive_stream(11, {5});
    std::vector<int> counts(7, 0);
    const int n = 70000;
    for (int i = 0; i < n; ++i) ++counts[rng.uniform_int(7)];
    for (int c : counts) CHECK(std::fabs(c - n / 7.0) < 5.0 * std::sqrt(n / 7.0));
}

TEST_CASE("normal has the right first two moments") {
    RngStream rng = derive_stream(13, {2});
    std::vector<double> x(20000);
    for (double& v : x) v = rng.normal();
    CHECK(std::fabs(stats::mean(x)) < 0.03);
    CHECK(std::fabs(stats::variance(x) - 1.0) < 0.05);
}
