#pragma once

#include <cstdint>
#include <initializer_list>

namespace tailgate {

// Counter-based pseudo-random stream. The state is a key plus a counter;
// each draw mixes key + counter * golden-gamma through the SplitMix64
// finalizer. Streams for parallel tasks are derived by hashing a task path
// (e.g. {level, subsample, replicate}) into the key, so any task's stream
// is reproducible independent of scheduling or thread count.
class RngStream {
public:
    RngStream() : key_(0), ctr_(0) {}
    explicit RngStream(std::uint64_t key) : key_(key), ctr_(0) {}

    std::uint64_t next_u64();

    // Uniform on [0,1), 53-bit resolution.
    double uniform();
    // Uniform on (0,1); never returns an endpoint.
    double uniform_pos();
    // Uniform on [lo, hi).
    double uniform_range(double lo, double hi);
    // Unbiased uniform integer in [0, n), n >= 1. Rejection via bitmask.
    std::uint64_t uniform_int(std::uint64_t n);
    // Standard exponential, mean 1.
    double exponential();
    // Standard normal via Box-Muller (one value per call, no cached spare).
    double normal();

private:
    std::uint64_t key_;
    std::uint64_t ctr_;
};

// SplitMix64 finalizer (xor-shift-multiply bijection on 64 bits).
std::uint64_t mix64(std::uint64_t z);

// Derives a stream from a master seed and a task path. Words are folded
// sequentially, so ({1,2}) and ({2,1}) give unrelated streams.
RngStream derive_stream(std::uint64_t seed, std::initializer_list<std::uint64_t> path);

}  // namespace tailgate
