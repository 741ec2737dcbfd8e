// rng.hpp — Counter-based random numbers: every draw is a pure function of
// (seed, stream, index), so batches may be scheduled on any number of workers
// without changing a single bit of output.

#pragma once

#include <cstdint>

namespace anticross {

// SplitMix64 finalizer (Stafford mix13)
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Key of one independent stream (per batch in the simulator).
inline std::uint64_t stream_key(std::uint64_t seed, std::uint64_t stream) {
    return mix64(seed + 0x9E3779B97F4A7C15ULL * (stream + 1));
}

// index-th word of a stream: random-access SplitMix64.
inline std::uint64_t counter_word(std::uint64_t key, std::uint64_t index) {
    return mix64(key + 0x9E3779B97F4A7C15ULL * index);
}

// uniform double in [0, 1) with 53 random bits
inline double counter_uniform(std::uint64_t key, std::uint64_t index) {
    return static_cast<double>(counter_word(key, index) >> 11) * 0x1.0p-53;
}

}  // namespace anticross
