#pragma once

#include <cstdint>
#include <random>

namespace fundrisk {

// Deterministic per-path random stream.
//
// Each (seed, path index) pair selects an independent std::mt19937_64
// initialised through std::seed_seq, both of which are bit-exactly specified
// by the standard. Normal variates use the Box-Muller transform on 53-bit
// uniforms, consuming two engine outputs per pair of normals. Nothing here
// depends on implementation-defined std:: distributions, so a path's draws
// depend only on (seed, path index) and never on which worker produced them.
class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint64_t path_index);

    // Uniform on [0, 1) with 53 bits of resolution.
    double uniform();

    // Standard normal N(0, 1).
    double normal();

    std::uint64_t next_u64() { return engine_(); }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace fundrisk
