#include "tailgate/rng.hpp"

#include <cmath>

#include "tailgate/error.hpp"

namespace tailgate {

namespace {
constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
}

std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
}

std::uint64_t RngStream::next_u64() {
    ++ctr_;
    return mix64(key_ + ctr_ * kGolden);
}

double RngStream::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform_pos() {
    return (static_cast<double>(next_u64() >> 12) + 0.5) * 0x1.0p-52;
}

double RngStream::uniform_range(double lo, double hi) {
    return lo + (hi - lo) * uniform();
}

std::uint64_t RngStream::uniform_int(std::uint64_t n) {
    if (n == 0) throw ParameterError("uniform_int: n must be positive");
    if ((n & (n - 1)) == 0) return next_u64() & (n - 1);
    std::uint64_t mask = ~0ULL >> __builtin_clzll(n | 1);
    std::uint64_t v;
    do {
        v = next_u64() & mask;
    } while (v >= n);
    return v;
}

double RngStream::exponential() {
    return -std::log(uniform_pos());
}

double RngStream::normal() {
    double u1 = uniform_pos();
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
}

RngStream derive_stream(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
    std::uint64_t key = mix64(seed + kGolden);
    for (std::uint64_t w : path) {
        key = mix64(key ^ mix64(w + kGolden));
    }
    return RngStream(key);
}

}  // namespace tailgate
