#pragma once

#include <cstdint>

namespace iregress {

// xoshiro256++ with splitmix64 stream derivation. Self-contained so that
// seeded studies reproduce bit-for-bit across platforms and thread counts;
// each Monte-Carlo replication owns the stream derived from
// (master seed, replication index).
class RngStream {
public:
    RngStream() : RngStream(0, 0) {}
    RngStream(std::uint64_t master_seed, std::uint64_t stream_index);

    std::uint64_t next_u64();

    // Uniform on [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Marsaglia polar method; caches the spare deviate.
    double normal(double mean, double sd);

private:
    std::uint64_t state_[4];
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace iregress
